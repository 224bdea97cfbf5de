// loopeq: loop equations, contour moments and their cross-checks from the command line.
//
// Exit codes: 0 success, 1 a mathematical check failed (residual, conditioning,
// nonzero Tutte series, discriminator limit, quadrature tolerance), 2 usage or
// configuration error.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "loopeq/contours.hpp"
#include "loopeq/discrim.hpp"
#include "loopeq/loopgen.hpp"
#include "loopeq/momsolve.hpp"
#include "loopeq/quad.hpp"
#include "loopeq/serialize.hpp"
#include "loopeq/wick.hpp"
#include "moment_cache.hpp"

using namespace loopeq;
using json = nlohmann::json;

namespace {

constexpr int kMaxN = 5;
constexpr int kMaxLength = 6;

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string potential, out, cache_dir;
  bool no_cache = false;
  double tol = 1e-12;
};

json read_json(const std::string& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) throw ConfigError(what + " file not readable: " + path);
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::parse_error& e) {
    throw ConfigError(what + " file " + path + ": " + e.what());
  }
}

void emit(const json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw ConfigError("cannot write output file: " + out);
  f << text;
}

void check_N(int N) {
  if (N < 1 || N > kMaxN) throw ConfigError("--N must be in 1.." + std::to_string(kMaxN));
}

void check_length(const Partition& mu) {
  if (mu.length() > kMaxLength) {
    throw ConfigError("partition " + mu.to_string() + " has more than " + std::to_string(kMaxLength) + " parts");
  }
}

json cplx_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

cli::MomentCache make_cache(const Common& c) { return cli::MomentCache(cli::resolve_cache_dir(c.cache_dir, c.no_cache)); }

std::vector<Contour> class_arcs(const Potential& V) { return basis_arcs(V); }

HomologyClass load_class(const std::string& path, const Potential& V, int N_default) {
  const auto arcs = class_arcs(V);
  if (path.empty()) {
    // Default: (gamma_1 + ... + gamma_d)^N.
    return power_class(arcs, std::vector<CRational>(arcs.size(), CRational(1)), N_default);
  }
  return class_from_json(read_json(path, "class"), arcs);
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::string mu, potential2;
  int N = 0;
};

int run_gen(const Common& c, const GenArgs& a) {
  const auto mu = parse_int_list(a.mu, "--mu");
  const Potential V = Potential::from_file(c.potential);
  std::vector<RawTerm<CRational>> raw;
  json j;
  j["mu"] = mu;
  j["potential"] = V.to_json();
  if (!a.potential2.empty()) {
    const TwoPotential W(V, Potential::from_file(a.potential2));
    raw = q_twomatrix_raw(mu, W);
    j["potential2"] = W.Vt.to_json();
  } else {
    raw = q_raw(mu, V);
  }
  if (a.N > 0) {
    check_N(a.N);
    const auto folded = PowerSumPoly::from_raw(a.N, raw);
    j["N"] = a.N;
    j["Q"] = to_json(folded);
    j["text"] = folded.to_string();
  } else {
    j["Q"] = raw_terms_json(raw);
    j["text"] = raw_terms_text(raw);
  }
  emit(j, c.out);
  return 0;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string basis, targets;
  int N = 1;
};

template <class T>
json solve_json(const MomentFunctional<T>& F, const Potential& V, const std::vector<Partition>& targets) {
  double growth = 0.0;
  const auto values = solve_moments(F, V, targets, &growth);
  json arr = json::array();
  const auto z = F.basis_values.find(Partition{});
  for (const auto& mu : targets) {
    const T& v = values.at(mu);
    json e{{"mu", mu.parts()}};
    if constexpr (std::is_same_v<T, CRational>) {
      e["value"] = to_json(v);
      if (z != F.basis_values.end() && !z->second.is_zero()) e["normalized"] = to_json(v / z->second);
    } else {
      e["value"] = cplx_json(v);
      if (z != F.basis_values.end() && z->second != 0.0) e["normalized"] = cplx_json(v / z->second);
    }
    arr.push_back(e);
  }
  return {{"N", F.N}, {"d", F.d}, {"values", arr}, {"growth_factor", growth}};
}

int run_solve(const Common& c, const SolveArgs& a) {
  check_N(a.N);
  const Potential V = Potential::from_file(c.potential);
  const auto targets = parse_partition_list(a.targets, "--targets");
  for (const auto& mu : targets) check_length(mu);
  const json b = read_json(a.basis, "basis");
  if (!b.contains("values") || !b.at("values").is_array()) throw ConfigError("basis.values: expected an array");
  // Exact mode when every value is given as rational strings, complex doubles otherwise.
  bool exact = true;
  for (const auto& e : b.at("values")) exact = exact && !(e.contains("re") && e.at("re").is_number());
  json out;
  if (exact) {
    MomentFunctional<CRational> F{a.N, V.d(), {}};
    const auto p = powersum_from_json(b.at("values"), a.N, "basis.values");
    for (const auto& [mu, v] : p.terms()) F.basis_values[mu] = v;
    for (const auto& mu : partitions_in_box(a.N, V.d() - 1)) F.basis_values.try_emplace(mu, CRational(0));
    out = solve_json(F, V, targets);
  } else {
    MomentFunctional<cplx> F{a.N, V.d(), {}};
    const auto& vals = b.at("values");
    for (std::size_t i = 0; i < vals.size(); ++i) {
      const std::string f = "basis.values[" + std::to_string(i) + "]";
      const auto mu = partition_from_json(vals[i].at("mu"), f + ".mu");
      F.basis_values[mu] = cplx(vals[i].value("re", 0.0), vals[i].value("im", 0.0));
    }
    out = solve_json(F, V, targets);
  }
  emit(out, c.out);
  return 0;
}

// ---------------------------------------------------------------- residuals

struct ResidualArgs {
  std::string klass;
  int N = 2, weight = 6;
  double threshold = 1e-8;
};

int run_residuals(const Common& c, const ResidualArgs& a) {
  check_N(a.N);
  const Potential V = Potential::from_file(c.potential);
  const HomologyClass G = load_class(a.klass, V, a.N);
  if (G.N != a.N) throw ConfigError("class.N = " + std::to_string(G.N) + " differs from --N " + std::to_string(a.N));
  const auto need = needed_partitions(V, a.N, a.weight);
  int K = 0;
  for (const auto& nu : need) {
    check_length(nu);
    K = std::max(K, nu.weight());
  }
  auto cache = make_cache(c);
  const MomentTable T = cache.table(G.arcs, V, K + 2 * (a.N - 1), c.tol);
  Oracle oracle;
  for (const auto& nu : need) {
    const auto e = expectation(G, PowerSumPoly::power_sum(a.N, nu), T);
    oracle[nu] = {e.value, e.scale};
  }
  const auto rep = residuals(oracle, V, a.N, a.weight);
  json entries = json::array();
  for (const auto& e : rep.entries) {
    entries.push_back({{"mu", e.mu}, {"value", cplx_json(e.value)}, {"relative", e.relative}});
  }
  emit({{"N", a.N},
        {"weight_max", a.weight},
        {"class", to_json(G)},
        {"max_relative", rep.max_relative},
        {"worst_mu", rep.worst_mu},
        {"threshold", a.threshold},
        {"pass", rep.max_relative < a.threshold},
        {"entries", entries}},
       c.out);
  if (!(rep.max_relative < a.threshold)) throw VerificationFailure("max relative residual above threshold");
  return 0;
}

// ---------------------------------------------------------------- contours

struct ContourArgs {
  std::string emit_path;
  double ray_length = 6.0, connector = 0.0;
  int kmax = 8, points = 64;
};

int run_contours(const Common& c, const ContourArgs& a) {
  const Potential V = Potential::from_file(c.potential);
  json secs = json::array();
  for (const auto& s : sectors(V)) secs.push_back({{"index", s.index}, {"center", s.center_angle}, {"half_width", s.half_width}});
  json arcs = json::array(), lines = json::array();
  bool ok = true;
  for (const auto& arc : basis_arcs(V, a.connector)) {
    const auto adm = admissibility_check(arc, V, a.kmax);
    ok = ok && adm.pass;
    json e{{"label", arc.label}, {"describe", arc.describe()}, {"admissible", adm.pass}};
    if (!adm.pass) e["reason"] = adm.reason;
    arcs.push_back(e);
    json pts = json::array();
    for (auto z : polyline(arc, a.ray_length, a.points)) pts.push_back({z.real(), z.imag()});
    lines.push_back({{"label", arc.label}, {"points", pts}});
  }
  if (!a.emit_path.empty()) {
    std::ofstream f(a.emit_path);
    if (!f) throw ConfigError("cannot write polyline file: " + a.emit_path);
    f << lines.dump() << "\n";
  }
  emit({{"potential", V.to_json()}, {"d", V.d()}, {"sectors", secs}, {"arcs", arcs}}, c.out);
  if (!ok) throw VerificationFailure("a basis arc failed the admissibility check");
  return 0;
}

// ---------------------------------------------------------------- expect

struct ExpectArgs {
  std::string klass, poly = "", csv;
  int N = 1;
};

int run_expect(const Common& c, const ExpectArgs& a) {
  const Potential V = Potential::from_file(c.potential);
  const HomologyClass G = load_class(a.klass, V, a.N);
  check_N(G.N);
  PowerSumPoly p(G.N);
  for (const auto& mu : parse_partition_list(a.poly.empty() ? "" : a.poly, "--poly")) {
    check_length(mu);
    p.add_term(mu, CRational(1));
  }
  if (a.poly.empty()) p = PowerSumPoly::constant(G.N, 1);
  auto cache = make_cache(c);
  const int K = std::max(required_moment(p, G.N), 2 * (G.N - 1));
  const MomentTable T = cache.table(G.arcs, V, K, c.tol);
  const auto e = expectation(G, p, T);
  const auto Z = expectation(G, PowerSumPoly::constant(G.N, 1), T);
  json out{{"re", e.value.real()}, {"im", e.value.imag()}, {"err", e.err}, {"scale", e.scale}, {"N", G.N}};
  if (std::abs(Z.value) > 0) out["normalized"] = cplx_json(e.value / Z.value);
  if (!a.csv.empty()) {
    std::ofstream f(a.csv);
    if (!f) throw ConfigError("cannot write moments CSV: " + a.csv);
    f << "arc,k,re,im,err,scale\n";
    f.precision(17);
    for (std::size_t j = 0; j < T.arcs.size(); ++j) {
      for (std::size_t k = 0; k < T.arcs[j].value.size(); ++k) {
        f << j + 1 << "," << k << "," << T.arcs[j].value[k].real() << "," << T.arcs[j].value[k].imag() << ","
          << T.arcs[j].err[k] << "," << T.arcs[j].scale[k] << "\n";
      }
    }
  }
  emit(out, c.out);
  return 0;
}

// ---------------------------------------------------------------- iso

struct IsoArgs {
  int N = 1;
  double threshold = 1e-8;
};

int run_iso(const Common& c, const IsoArgs& a) {
  check_N(a.N);
  const Potential V = Potential::from_file(c.potential);
  const auto arcs = basis_arcs(V);
  auto cache = make_cache(c);
  const MomentTable T = cache.table(arcs, V, moment_matrix_order(a.N, static_cast<int>(arcs.size())), c.tol);
  const auto mm = moment_matrix(T, a.N);
  json rows = json::array(), cols = json::array(), entries = json::array(), errors = json::array();
  for (const auto& r : mm.rows) rows.push_back(r);
  for (const auto& col : mm.cols) cols.push_back(col.parts());
  for (std::size_t i = 0; i < mm.rows.size(); ++i) {
    json er = json::array(), ee = json::array();
    for (std::size_t j = 0; j < mm.cols.size(); ++j) {
      er.push_back(to_json(mm.entries[i][j]));
      ee.push_back(mm.errors[i][j]);
    }
    entries.push_back(er);
    errors.push_back(ee);
  }
  const double smin = mm.min_scaled_singular_value();
  emit({{"N", a.N},
        {"d", V.d()},
        {"size", mm.rows.size()},
        {"hn_dimension", hn_dimension(a.N, V.d())},
        {"rows", rows},
        {"cols", cols},
        {"entries", entries},
        {"errors", errors},
        {"scaled_singular_values", mm.singular_values},
        {"min_scaled_singular_value", smin},
        {"threshold", a.threshold},
        {"pass", smin > a.threshold}},
       c.out);
  if (!(smin > a.threshold)) throw VerificationFailure("moment matrix is numerically singular");
  return 0;
}

// ---------------------------------------------------------------- maps / tutte

struct MapArgs {
  std::map<int, std::string> weights;  // "p/q" or "sym"
  std::string marked, mu;
  int order = 4;
  int all_weight = -1;
};

MapModel map_model(const MapArgs& a) {
  MapModel m;
  for (const auto& [k, s] : a.weights) {
    if (s.empty()) continue;
    if (s == "sym") {
      m.weights[k] = LaurentPoly::variable(k);
      continue;
    }
    const CRational v = crational_from_json(json(s), "--t" + std::to_string(k));
    if (!v.is_zero()) m.weights[k] = LaurentPoly(v);
  }
  return m;
}

json series_json(const MapSeries& s, const std::vector<std::string>& names) {
  json coeffs = json::object();
  for (const auto& [e, c] : s.coeffs) coeffs[std::to_string(e)] = c.is_zero() ? std::string("0") : c.to_string(names);
  return coeffs;
}

void check_order(int order) {
  if (order < 0 || order > kMaxOrder) throw ConfigError("--order must be in 0.." + std::to_string(kMaxOrder));
}

int run_maps(const Common& c, const MapArgs& a) {
  check_order(a.order);
  const MapModel m = map_model(a);
  const auto marked = parse_int_list(a.marked, "--marked");
  for (int k : marked) {
    if (k < 1) throw ConfigError("--marked: face sizes must be >= 1");
  }
  const auto s = map_series(m, marked, a.order);
  emit({{"marked", marked}, {"order", a.order}, {"series", series_json(s, map_variable_names(m.max_degree()))}}, c.out);
  return 0;
}

int run_tutte(const Common& c, const MapArgs& a) {
  check_order(a.order);
  const MapModel m = map_model(a);
  std::vector<std::vector<int>> mus;
  if (a.all_weight >= 0) {
    mus = loop_indices(a.all_weight);
  } else {
    if (a.mu.empty()) throw ConfigError("tutte: give --mu or --all-weight");
    mus.push_back(parse_int_list(a.mu, "--mu"));
  }
  json results = json::array();
  bool ok = true;
  const auto names = map_variable_names(m.max_degree());
  for (const auto& mu : mus) {
    const auto r = tutte_residual(m, mu, a.order);
    ok = ok && r.is_zero();
    results.push_back({{"mu", mu}, {"zero", r.is_zero()}, {"residual", series_json(r, names)}});
  }
  emit({{"order", a.order}, {"pass", ok}, {"results", results}}, c.out);
  if (!ok) throw VerificationFailure("Tutte residual series is not identically zero");
  return 0;
}

// ---------------------------------------------------------------- discrim

struct DiscrimArgs {
  int r = 60, N = 1;
  double threshold = 0.2;
};

int run_discrim(const Common& c, const DiscrimArgs& a) {
  const Potential V = Potential::from_file(c.potential);
  const auto rep = discriminator_report(V, a.r, a.N, std::max(c.tol, 1e-10));
  json saddles = json::array();
  for (std::size_t j = 0; j < rep.saddles.xi.size(); ++j) {
    saddles.push_back({{"xi", to_json(rep.saddles.xi[j])},
                       {"Q_prime", to_json(rep.saddles.Q_prime[j])},
                       {"Vr", to_json(rep.saddles.Vr_values[j])},
                       {"Vr_second", to_json(rep.saddles.Vr_second[j])}});
  }
  json classes = json::array(), pairs = json::array();
  for (std::size_t i = 0; i < rep.classes.size(); ++i) {
    classes.push_back({{"n", rep.classes[i]}, {"log_A", to_json(rep.log_A[i])}});
  }
  double worst = 0.0;
  for (const auto& e : rep.entries) {
    const bool gated = std::find(rep.J_max.begin(), rep.J_max.end(), e.n) != rep.J_max.end() &&
                       std::find(rep.J_max.begin(), rep.J_max.end(), e.m) != rep.J_max.end();
    const double dev = std::abs(e.ratio - (e.n == e.m ? 1.0 : 0.0));
    if (gated) worst = std::max(worst, dev);
    pairs.push_back({{"n", e.n}, {"m", e.m}, {"ratio", cplx_json(e.ratio)}, {"err", e.err}, {"maximal_pair", gated}});
  }
  json jmax = json::array();
  for (const auto& n : rep.J_max) jmax.push_back(n);
  emit({{"r", a.r},
        {"N", a.N},
        {"saddles", saddles},
        {"classes", classes},
        {"J_max", jmax},
        {"pairs", pairs},
        {"max_deviation_on_J_max", worst},
        {"threshold", a.threshold},
        {"pass", worst < a.threshold}},
       c.out);
  if (!(worst < a.threshold)) throw VerificationFailure("discriminator ratios far from delta on maximal pairs");
  return 0;
}

void add_common(CLI::App* sub, Common& c, bool needs_potential) {
  auto* p = sub->add_option("--potential", c.potential, "potential JSON file");
  if (needs_potential) p->required();
  sub->add_option("--out", c.out, "write the JSON report here instead of stdout");
  sub->add_option("--tol", c.tol, "relative quadrature tolerance");
  sub->add_option("--cache-dir", c.cache_dir, "moment cache directory (default $LOOPEQ_CACHE)");
  sub->add_flag("--no-cache", c.no_cache, "do not read or write the moment cache");
}

void add_map_weights(CLI::App* sub, MapArgs& a) {
  for (int k = 3; k <= 8; ++k) {
    sub->add_option("--t" + std::to_string(k), a.weights[k], "vertex weight t" + std::to_string(k) + ": p/q or sym");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"loopeq: matrix-model loop equations and contour moment functionals"};
  app.require_subcommand(1);
  Common common;
  GenArgs gen;
  SolveArgs solve;
  ResidualArgs res;
  ContourArgs cont;
  ExpectArgs expect;
  IsoArgs iso;
  MapArgs maps, tutte;
  DiscrimArgs disc;
  std::function<int()> action;

  auto* s_gen = app.add_subcommand("gen", "print Q_mu for a loop index");
  add_common(s_gen, common, true);
  s_gen->add_option("--mu", gen.mu, "loop index mu_1,mu_2,... (mu_1 may be 0)")->required();
  s_gen->add_option("--potential2", gen.potential2, "second potential: two-matrix model");
  s_gen->add_option("--N", gen.N, "fold p_0 = N and emit in the folded basis");
  s_gen->callback([&] { action = [&] { return run_gen(common, gen); }; });

  auto* s_solve = app.add_subcommand("solve", "reduce moments to the A_{N,d} basis and evaluate");
  add_common(s_solve, common, true);
  s_solve->add_option("--N", solve.N)->required();
  s_solve->add_option("--basis", solve.basis, "basis values JSON")->required();
  s_solve->add_option("--targets", solve.targets, "partitions, e.g. \"4;3,1\"")->required();
  s_solve->callback([&] { action = [&] { return run_solve(common, solve); }; });

  auto* s_res = app.add_subcommand("residuals", "loop-equation residuals of a quadrature functional");
  add_common(s_res, common, true);
  s_res->add_option("--N", res.N);
  s_res->add_option("--class", res.klass, "homology class JSON (default (sum gamma_j)^N)");
  s_res->add_option("--weight", res.weight, "check all mu with |mu| <= weight");
  s_res->add_option("--threshold", res.threshold);
  s_res->callback([&] { action = [&] { return run_residuals(common, res); }; });

  auto* s_cont = app.add_subcommand("contours", "sectors and basis arcs");
  add_common(s_cont, common, true);
  s_cont->add_option("--emit", cont.emit_path, "write sampled polylines JSON");
  s_cont->add_option("--ray-length", cont.ray_length);
  s_cont->add_option("--points", cont.points);
  s_cont->add_option("--connector", cont.connector, "radius of the circular connector at 0");
  s_cont->add_option("--kmax", cont.kmax, "highest moment in the admissibility check");
  s_cont->callback([&] { action = [&] { return run_contours(common, cont); }; });

  auto* s_exp = app.add_subcommand("expect", "E_Gamma(p) by quadrature");
  add_common(s_exp, common, true);
  s_exp->add_option("--class", expect.klass, "homology class JSON");
  s_exp->add_option("--N", expect.N, "N for the default class");
  s_exp->add_option("--poly", expect.poly, "sum of power sums, e.g. \"2,1\" or \"2;1,1\"");
  s_exp->add_option("--moments-csv", expect.csv, "write the arc moment table as CSV");
  s_exp->callback([&] { action = [&] { return run_expect(common, expect); }; });

  auto* s_iso = app.add_subcommand("iso", "moment matrix on the basis classes and its conditioning");
  add_common(s_iso, common, true);
  s_iso->add_option("--N", iso.N)->required();
  s_iso->add_option("--threshold", iso.threshold);
  s_iso->callback([&] { action = [&] { return run_iso(common, iso); }; });

  auto* s_maps = app.add_subcommand("maps", "generating series of maps with marked faces");
  add_common(s_maps, common, false);
  add_map_weights(s_maps, maps);
  s_maps->add_option("--marked", maps.marked, "marked face sizes, e.g. 3 or 2,1");
  s_maps->add_option("--order", maps.order, "edges e_max");
  s_maps->callback([&] { action = [&] { return run_maps(common, maps); }; });

  auto* s_tutte = app.add_subcommand("tutte", "loop equations on the map series (exact)");
  add_common(s_tutte, common, false);
  add_map_weights(s_tutte, tutte);
  s_tutte->add_option("--mu", tutte.mu, "loop index");
  s_tutte->add_option("--all-weight", tutte.all_weight, "check every loop index with |mu| <= this");
  s_tutte->add_option("--order", tutte.order, "edges e_max");
  s_tutte->callback([&] { action = [&] { return run_tutte(common, tutte); }; });

  auto* s_disc = app.add_subcommand("discrim", "saddle-point discriminator ratios");
  add_common(s_disc, common, true);
  s_disc->add_option("--r", disc.r);
  s_disc->add_option("--N", disc.N);
  s_disc->add_option("--threshold", disc.threshold);
  s_disc->callback([&] { action = [&] { return run_discrim(common, disc); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return action();
  } catch (const VerificationFailure& e) {
    std::cerr << "loopeq: verification failed: " << e.what() << "\n";
    return 1;
  } catch (const QuadratureError& e) {
    std::cerr << "loopeq: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "loopeq: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "loopeq: " << e.what() << "\n";
    return 2;
  } catch (const MissingMoments& e) {
    std::cerr << "loopeq: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "loopeq: malformed JSON input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "loopeq: computation failed: " << e.what() << "\n";
    return 1;
  }
}
