#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "loopeq/contours.hpp"
#include "loopeq/quad.hpp"

namespace loopeq::cli {

// Directory from --cache-dir, else $LOOPEQ_CACHE, else $XDG_CACHE_HOME/loopeq or ~/.cache/loopeq.
std::optional<std::filesystem::path> resolve_cache_dir(const std::string& flag, bool disabled);

// Arc moment vectors on disk, one JSON file per SHA-256 of
// (potential JSON, exact arc descriptor, K, tol). Doubles round-trip exactly,
// so a cache hit reproduces the computed table bit for bit.
class MomentCache {
 public:
  explicit MomentCache(std::optional<std::filesystem::path> dir);

  MomentTable table(const std::vector<Contour>& arcs, const Potential& V, int K, double tol);
  int hits() const { return hits_; }
  int misses() const { return misses_; }

  static std::string key(const Contour& c, const Potential& V, int K, double tol);

 private:
  ContourIntegral arc(const Contour& c, const Potential& V, int K, double tol);

  std::optional<std::filesystem::path> dir_;
  int hits_ = 0, misses_ = 0;
};

}  // namespace loopeq::cli
