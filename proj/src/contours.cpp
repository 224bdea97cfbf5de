#include "loopeq/contours.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace loopeq {

namespace {

constexpr double kPi = std::numbers::pi;

// Leading coefficient and degree of the polynomial part of V (degree of V itself).
bool polynomial_part_lead(const Potential& V, cplx& lead, int& n) {
  const UPoly& S = V.polynomial_part();
  if (S.empty()) return false;
  lead = S.back().to_complex();
  n = static_cast<int>(S.size());
  return true;
}

// cos(n theta + arg lead) > 0 strictly inside an admissible sector.
double direction_margin(const Potential& V, double theta) {
  cplx lead;
  int n = 0;
  if (!polynomial_part_lead(V, lead, n)) return -1.0;
  return std::cos(n * theta + std::arg(lead));
}

double distance_to_segment(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  double s = len2 == 0.0 ? 0.0 : std::real((p - a) * std::conj(ab)) / len2;
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(p - (a + s * ab));
}

double distance_to_ray(cplx p, cplx origin, double angle) {
  const cplx dir = std::polar(1.0, angle);
  const double s = std::max(0.0, std::real((p - origin) * std::conj(dir)));
  return std::abs(p - (origin + s * dir));
}

double distance_to_arc(cplx p, const Segment& s) {
  if (s.closed()) return std::abs(std::abs(p - s.center) - s.radius);
  double best = 1e300;
  const int steps = 256;
  for (int i = 0; i <= steps; ++i) {
    const double phi = s.phi0 + (s.phi1 - s.phi0) * i / steps;
    best = std::min(best, std::abs(p - (s.center + std::polar(s.radius, phi))));
  }
  return best;
}

double distance_to(cplx p, const Segment& s) {
  switch (s.kind) {
    case Segment::Kind::ray: return distance_to_ray(p, s.origin, s.angle);
    case Segment::Kind::line: return distance_to_segment(p, s.a, s.b);
    case Segment::Kind::arc: return distance_to_arc(p, s);
  }
  return 0.0;
}

std::vector<Pole> sorted_poles(const Potential& V) {
  auto poles = V.poles();
  std::sort(poles.begin(), poles.end(), [](const Pole& a, const Pole& b) {
    if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
    return a.location.imag() < b.location.imag();
  });
  return poles;
}

std::string fmt(cplx z) {
  std::ostringstream os;
  os.precision(6);
  os << "(" << z.real() << "," << z.imag() << ")";
  return os.str();
}

}  // namespace

std::vector<Sector> sectors(const Potential& V) {
  cplx lead;
  int n = 0;
  if (!polynomial_part_lead(V, lead, n)) return {};
  std::vector<Sector> out;
  for (int j = 0; j < n; ++j) {
    out.push_back({(2 * kPi * j - std::arg(lead)) / n, kPi / (2 * n), j});
  }
  return out;
}

Segment Segment::ray(cplx origin, double angle, int orientation) {
  Segment s;
  s.kind = Kind::ray;
  s.origin = origin;
  s.angle = angle;
  s.orientation = orientation >= 0 ? 1 : -1;
  return s;
}

Segment Segment::line(cplx a, cplx b) {
  Segment s;
  s.kind = Kind::line;
  s.a = a;
  s.b = b;
  return s;
}

Segment Segment::arc(cplx center, double radius, double phi0, double phi1) {
  Segment s;
  s.kind = Kind::arc;
  s.center = center;
  s.radius = radius;
  s.phi0 = phi0;
  s.phi1 = phi1;
  return s;
}

bool Segment::closed() const {
  return kind == Kind::arc && std::abs(std::abs(phi1 - phi0) - 2 * kPi) < 1e-12;
}

std::string Segment::describe() const {
  std::ostringstream os;
  os.precision(10);
  switch (kind) {
    case Kind::ray:
      os << "ray origin=" << fmt(origin) << " angle=" << angle << " orientation=" << orientation;
      break;
    case Kind::line: os << "line " << fmt(a) << "->" << fmt(b); break;
    case Kind::arc:
      os << "arc center=" << fmt(center) << " radius=" << radius << " phi=" << phi0 << "->" << phi1;
      break;
  }
  return os.str();
}

Contour Contour::ray_pair(cplx through, double in_angle, double out_angle, std::string label) {
  Contour c;
  c.segments = {Segment::ray(through, in_angle, -1), Segment::ray(through, out_angle, 1)};
  c.start.kind = Endpoint::Kind::sector;
  c.end.kind = Endpoint::Kind::sector;
  c.label = std::move(label);
  return c;
}

Contour Contour::circle(cplx center, double radius, std::string label) {
  Contour c;
  c.segments = {Segment::arc(center, radius, 0.0, 2 * kPi)};
  c.label = std::move(label);
  return c;
}

std::string Contour::describe() const {
  std::string s = label.empty() ? "contour" : label;
  s += ":";
  for (const auto& seg : segments) s += " [" + seg.describe() + "]";
  return s;
}

std::vector<Contour> basis_arcs(const Potential& V, double connector) {
  const auto secs = sectors(V);
  std::vector<Contour> arcs;
  const auto poles = sorted_poles(V);

  for (std::size_t j = 1; j < secs.size(); ++j) {
    const double in = secs[j].center_angle;
    const double out = secs[j - 1].center_angle;
    Contour c;
    if (connector > 0.0) {
      c.segments = {Segment::ray(std::polar(connector, in), in, -1), Segment::arc(0.0, connector, in, out),
                    Segment::ray(std::polar(connector, out), out, 1)};
      c.start.kind = c.end.kind = Endpoint::Kind::sector;
    } else {
      c = Contour::ray_pair(0.0, in, out);
    }
    c.start.sector = static_cast<int>(j);
    c.end.sector = static_cast<int>(j - 1);
    c.label = "gamma_" + std::to_string(j);
    for (const auto& p : poles) {
      for (const auto& seg : c.segments) {
        if (distance_to(p.location, seg) < 0.25) {
          throw std::invalid_argument("basis_arcs: sector arc passes within 0.25 of a pole at " + fmt(p.location) +
                                      "; unsupported geometry");
        }
      }
    }
    arcs.push_back(std::move(c));
  }

  for (std::size_t i = 0; i < poles.size(); ++i) {
    const auto& p = poles[i];
    if (!p.integer_residue) throw std::invalid_argument("cut placement unsupported: non-integer residue at pole " + fmt(p.location));
    const std::string label = "gamma_" + std::to_string(arcs.size() + 1);
    if (p.rounded_residue > 0) {
      double radius = 1.0;
      for (std::size_t k = 0; k < poles.size(); ++k) {
        if (k != i) radius = std::min(radius, 0.5 * std::abs(poles[k].location - p.location));
      }
      arcs.push_back(Contour::circle(p.location, radius, label));
    } else {
      if (secs.empty()) {
        throw std::invalid_argument("basis_arcs: zero of e^{-V} at " + fmt(p.location) +
                                    " with no admissible direction at infinity; unsupported");
      }
      Contour c;
      c.segments = {Segment::ray(p.location, secs[0].center_angle, 1)};
      c.start.kind = Endpoint::Kind::point;
      c.start.point = p.location;
      c.end.kind = Endpoint::Kind::sector;
      c.end.sector = 0;
      c.label = label;
      for (std::size_t k = 0; k < poles.size(); ++k) {
        if (k != i && distance_to(poles[k].location, c.segments[0]) < 0.25) {
          throw std::invalid_argument("basis_arcs: ray from zero at " + fmt(p.location) + " passes near another pole");
        }
      }
      arcs.push_back(std::move(c));
    }
  }
  if (static_cast<int>(arcs.size()) != V.d()) {
    throw std::invalid_argument("basis_arcs: built " + std::to_string(arcs.size()) + " arcs but deg V' = " +
                                std::to_string(V.d()) + "; unsupported pole configuration");
  }
  return arcs;
}

AdmissibilityReport admissibility_check(const Contour& c, const Potential& V, int kmax) {
  AdmissibilityReport rep;
  auto fail = [&](cplx where, std::string why) {
    rep.pass = false;
    rep.location = where;
    rep.reason = std::move(why);
    return rep;
  };
  for (const auto& seg : c.segments) {
    for (const auto& p : V.poles()) {
      const bool weight_pole = !p.integer_residue || p.rounded_residue > 0;
      const bool is_endpoint = seg.kind == Segment::Kind::ray && std::abs(seg.origin - p.location) < 1e-12 &&
                               p.integer_residue && p.rounded_residue < 0;
      if (weight_pole && !is_endpoint && distance_to(p.location, seg) < 1e-9) {
        return fail(p.location, "contour passes through a pole of e^{-V}");
      }
    }
    if (seg.kind != Segment::Kind::ray) continue;
    const cplx dir = std::polar(1.0, seg.angle);
    const double margin = direction_margin(V, seg.angle);
    if (margin <= 1e-9) {
      return fail(seg.origin + 1e3 * dir, "Re V does not tend to +infinity along direction angle " +
                                              std::to_string(seg.angle));
    }
    // Sample |x|^k |e^{-V}| outward; it must eventually decrease.
    double prev = -1e300;
    bool decreasing_tail = false;
    for (double s = 1.0; s <= 1e6; s *= 2.0) {
      const cplx x = seg.origin + s * dir;
      const double v = kmax * std::log(std::abs(x) + 1e-300) + V.log_abs_weight(x);
      if (!std::isfinite(v) && v > 0) return fail(x, "integrand not finite");
      decreasing_tail = v < prev;
      prev = v;
      if (v < -745.0) break;
    }
    if (!decreasing_tail && prev > -745.0) return fail(seg.origin + 1e6 * dir, "|x^k e^{-V}| does not decay");
  }
  return rep;
}

namespace {

// Poles/zeros of e^{-V} enclosed by a closed circle.
std::vector<int> enclosed(const Segment& s, const Potential& V) {
  std::vector<int> out;
  for (std::size_t i = 0; i < V.poles().size(); ++i) {
    if (std::abs(V.poles()[i].location - s.center) < s.radius) out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace

Contour deform(const Contour& c, const Bump& bump, const Potential& V) {
  if (bump.radius_scale <= 0.0) throw std::invalid_argument("deform: radius_scale must be positive");
  Contour out = c;
  out.label = c.label.empty() ? "deformed" : c.label + "'";
  if (c.start.kind == Endpoint::Kind::point && std::abs(bump.shift) > 0.0) {
    throw std::invalid_argument("deform: contour ends at a zero of e^{-V}; its endpoint cannot be shifted");
  }
  for (std::size_t i = 0; i < out.segments.size(); ++i) {
    Segment& s = out.segments[i];
    const Segment& old = c.segments[i];
    switch (s.kind) {
      case Segment::Kind::ray: {
        s.angle = old.angle + bump.angle_shift;
        // Rays glued to a connector arc follow the arc; others translate.
        bool glued = false;
        for (const auto& a : c.segments) {
          if (a.kind != Segment::Kind::arc || a.closed()) continue;
          for (double phi : {a.phi0, a.phi1}) {
            if (std::abs(old.origin - (a.center + std::polar(a.radius, phi))) < 1e-12) {
              s.origin = a.center + bump.shift + std::polar(a.radius * bump.radius_scale, phi + bump.angle_shift);
              glued = true;
            }
          }
        }
        if (!glued) s.origin = old.origin + bump.shift;
        if (direction_margin(V, s.angle) <= 1e-9) {
          throw std::invalid_argument("deform: perturbation exits admissible sector (ray angle " +
                                      std::to_string(s.angle) + ")");
        }
        break;
      }
      case Segment::Kind::line:
        s.a += bump.shift;
        s.b += bump.shift;
        break;
      case Segment::Kind::arc:
        s.center += bump.shift;
        s.radius *= bump.radius_scale;
        if (!old.closed()) {
          s.phi0 += bump.angle_shift;
          s.phi1 += bump.angle_shift;
        } else if (enclosed(old, V) != enclosed(s, V)) {
          throw std::invalid_argument("deform: circle changes the set of enclosed poles");
        }
        break;
    }
    for (const auto& p : V.poles()) {
      const bool endpoint = c.start.kind == Endpoint::Kind::point && std::abs(p.location - c.start.point) < 1e-12;
      if (!endpoint && distance_to(p.location, s) < 1e-6) {
        throw std::invalid_argument("deform: deformed contour hits a pole at " + fmt(p.location));
      }
    }
  }
  return out;
}

HomologyClass power_class(const std::vector<Contour>& arcs, const std::vector<CRational>& c, int N) {
  if (c.size() != arcs.size()) throw std::invalid_argument("power_class: one coefficient per arc required");
  HomologyClass h;
  h.N = N;
  h.arcs = arcs;
  for (const auto& n : compositions(N, static_cast<int>(arcs.size()))) {
    CRational coeff(1);
    for (std::size_t j = 0; j < n.size(); ++j) coeff *= c[j].pow(static_cast<unsigned>(n[j]));
    if (!coeff.is_zero()) h.terms[n] = coeff;
  }
  return h;
}

HomologyClass single_class(const std::vector<Contour>& arcs, const Composition& n, const CRational& c) {
  if (n.size() != arcs.size()) throw std::invalid_argument("single_class: composition length must match arc count");
  HomologyClass h;
  h.N = 0;
  for (int v : n) {
    if (v < 0) throw std::invalid_argument("single_class: negative multiplicity");
    h.N += v;
  }
  h.arcs = arcs;
  h.terms[n] = c;
  return h;
}

std::vector<cplx> polyline(const Contour& c, double ray_length, int points_per_segment) {
  std::vector<cplx> pts;
  const int m = std::max(points_per_segment, 2);
  for (const auto& s : c.segments) {
    for (int i = 0; i < m; ++i) {
      const double u = static_cast<double>(i) / (m - 1);
      switch (s.kind) {
        case Segment::Kind::ray: {
          const double r = ray_length * (s.orientation > 0 ? u : 1.0 - u);
          pts.push_back(s.origin + std::polar(r, s.angle));
          break;
        }
        case Segment::Kind::line: pts.push_back(s.a + u * (s.b - s.a)); break;
        case Segment::Kind::arc: pts.push_back(s.center + std::polar(s.radius, s.phi0 + u * (s.phi1 - s.phi0))); break;
      }
    }
  }
  return pts;
}

}  // namespace loopeq
