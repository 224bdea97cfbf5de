#include "loopeq/partition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace loopeq {

Partition::Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_) {
    if (p < 1) throw std::invalid_argument("partition parts must be >= 1");
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

int Partition::weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

Partition Partition::joined(const Partition& other) const {
  std::vector<int> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return Partition(std::move(all));
}

Partition Partition::with_part(int part) const {
  std::vector<int> all = parts_;
  all.push_back(part);
  return Partition(std::move(all));
}

Partition Partition::without(std::size_t i) const {
  std::vector<int> rest = parts_;
  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
  Partition p;
  p.parts_ = std::move(rest);
  return p;
}

std::string Partition::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts_[i]);
  }
  return s + ")";
}

bool GradedRevLex::operator()(const Partition& a, const Partition& b) const {
  const int wa = a.weight();
  const int wb = b.weight();
  if (wa != wb) return wa < wb;
  return std::lexicographical_compare(b.parts().begin(), b.parts().end(), a.parts().begin(),
                                      a.parts().end());
}

namespace {

void fill_partitions(int remaining, int max_part, int max_length, std::vector<int>& cur,
                     std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  if (static_cast<int>(cur.size()) == max_length) return;
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    fill_partitions(remaining - p, p, max_length, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int weight, int max_length) {
  std::vector<Partition> out;
  if (weight < 0 || max_length < 0) return out;
  std::vector<int> cur;
  fill_partitions(weight, weight, max_length, cur, out);
  return out;
}

std::vector<Partition> partitions_up_to(int max_weight, int max_length) {
  std::vector<Partition> out;
  for (int w = 0; w <= max_weight; ++w) {
    auto layer = partitions_of(w, max_length);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::vector<Partition> partitions_in_box(int max_length, int max_part) {
  std::vector<Partition> out;
  if (max_length < 0 || max_part < 0) return out;
  for (int w = 0; w <= max_length * max_part; ++w) {
    std::vector<int> cur;
    std::vector<Partition> layer;
    fill_partitions(w, max_part, max_length, cur, layer);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::vector<Composition> compositions(int total, int parts) {
  std::vector<Composition> out;
  if (parts <= 0 || total < 0) return out;
  Composition cur(static_cast<std::size_t>(parts), 0);
  std::function<void(int, int)> rec = [&](int idx, int remaining) {
    if (idx == parts - 1) {
      cur[static_cast<std::size_t>(idx)] = remaining;
      out.push_back(cur);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      cur[static_cast<std::size_t>(idx)] = v;
      rec(idx + 1, remaining - v);
    }
  };
  rec(0, total);
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    if (r > UINT64_MAX / num) throw std::overflow_error("binomial overflow");
    r = r * num / static_cast<std::uint64_t>(i);
  }
  return r;
}

std::uint64_t multinomial(std::span<const int> counts) {
  std::uint64_t r = 1;
  int total = 0;
  for (int c : counts) {
    total += c;
    r *= binomial(total, c);
  }
  return r;
}

}  // namespace loopeq
