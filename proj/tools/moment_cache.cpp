#include "moment_cache.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

namespace loopeq::cli {

namespace fs = std::filesystem;

namespace {

std::string hexfloat(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

std::string hexfloat(cplx z) { return hexfloat(z.real()) + "," + hexfloat(z.imag()); }

std::string exact_descriptor(const Contour& c) {
  std::ostringstream os;
  for (const auto& s : c.segments) {
    switch (s.kind) {
      case Segment::Kind::ray:
        os << "ray(" << hexfloat(s.origin) << ";" << hexfloat(s.angle) << ";" << s.orientation << ")";
        break;
      case Segment::Kind::line: os << "line(" << hexfloat(s.a) << ";" << hexfloat(s.b) << ")"; break;
      case Segment::Kind::arc:
        os << "arc(" << hexfloat(s.center) << ";" << hexfloat(s.radius) << ";" << hexfloat(s.phi0) << ";"
           << hexfloat(s.phi1) << ")";
        break;
    }
  }
  return os.str();
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

}  // namespace

std::optional<fs::path> resolve_cache_dir(const std::string& flag, bool disabled) {
  if (disabled) return std::nullopt;
  if (!flag.empty()) return fs::path(flag);
  if (const char* env = std::getenv("LOOPEQ_CACHE"); env && *env) return fs::path(env);
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "loopeq";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "loopeq";
  return std::nullopt;
}

MomentCache::MomentCache(std::optional<fs::path> dir) : dir_(std::move(dir)) {
  if (!dir_) return;
  std::error_code ec;
  fs::create_directories(*dir_, ec);
  if (ec) {
    std::cerr << "loopeq: cache disabled, cannot create " << dir_->string() << ": " << ec.message() << "\n";
    dir_.reset();
  }
}

std::string MomentCache::key(const Contour& c, const Potential& V, int K, double tol) {
  return sha256_hex(V.to_json().dump() + "\n" + exact_descriptor(c) + "\n" + std::to_string(K) + "\n" + hexfloat(tol));
}

ContourIntegral MomentCache::arc(const Contour& c, const Potential& V, int K, double tol) {
  fs::path file;
  if (dir_) {
    file = *dir_ / (key(c, V, K, tol) + ".json");
    std::ifstream in(file);
    if (in) {
      try {
        nlohmann::json j;
        in >> j;
        ContourIntegral I;
        for (const auto& z : j.at("value")) I.value.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
        I.err = j.at("err").get<std::vector<double>>();
        I.scale = j.at("scale").get<std::vector<double>>();
        if (I.value.size() == static_cast<std::size_t>(K + 1) && I.err.size() == I.value.size() &&
            I.scale.size() == I.value.size()) {
          ++hits_;
          return I;
        }
      } catch (const std::exception&) {
        // unreadable entry: recompute and overwrite
      }
    }
  }
  ++misses_;
  ContourIntegral I = arc_moments(c, V, K, tol);
  if (dir_) {
    nlohmann::json j;
    j["value"] = nlohmann::json::array();
    for (auto z : I.value) j["value"].push_back({z.real(), z.imag()});
    j["err"] = I.err;
    j["scale"] = I.scale;
    const fs::path tmp = file.string() + ".tmp" + std::to_string(::getpid());
    {
      std::ofstream out(tmp);
      out << j.dump();
    }
    std::error_code ec;
    fs::rename(tmp, file, ec);
    if (ec) fs::remove(tmp, ec);
  }
  return I;
}

MomentTable MomentCache::table(const std::vector<Contour>& arcs, const Potential& V, int K, double tol) {
  MomentTable T;
  T.K = K;
  for (const auto& c : arcs) T.arcs.push_back(arc(c, V, K, tol));
  return T;
}

}  // namespace loopeq::cli
