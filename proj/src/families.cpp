#include "splaylab/harness.hpp"

namespace splaylab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Rng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return splitmix64(state_);
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw Error(ErrorKind::InvalidArgument, "empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
  std::uint64_t v;
  do v = next();
  while (v >= limit);
  return lo + static_cast<std::int64_t>(v % span);
}

Tree random_tree(Rng& rng, std::size_t n, Key first) {
  std::vector<Key> keys = iota_keys(first, first + static_cast<Key>(n) - 1);
  rng.shuffle(keys);
  return bst_from_sequence(std::span<const Key>(keys));
}

std::vector<Key> random_requests(Rng& rng, const Tree& t, std::size_t m) {
  std::vector<Key> x;
  const auto& keys = t.keys();
  for (std::size_t i = 0; i < m; ++i) x.push_back(keys[rng.uniform(0, static_cast<std::int64_t>(keys.size()) - 1)]);
  return x;
}

std::vector<std::string> family_names() {
  return {"spine-312", "powers", "mtr-bad", "sequential", "traversal", "random"};
}

Instance generate(const std::string& family, const FamilyParams& p) {
  Instance inst;
  auto need_n = [&](std::size_t lo) {
    if (p.n < lo) throw Error(ErrorKind::InvalidArgument, family + " needs n >= " + std::to_string(lo));
  };
  const Key n = static_cast<Key>(p.n);
  if (family == "spine-312") {
    need_n(3);
    inst.initial = left_spine(iota_keys(1, n));
    inst.requests = {3, 1, 2};
    inst.subsequence = std::vector<Key>{1, 2};
  } else if (family == "powers") {
    if (p.k < 1 || p.k > 40) throw Error(ErrorKind::InvalidArgument, "powers needs 1 <= k <= 40");
    const Key top = Key{1} << (p.k - 1);
    inst.initial = left_spine(iota_keys(1, 2 * top - 1));
    std::vector<Key> y;
    for (Key v = top; v >= 1; v /= 2) inst.requests.push_back(v);
    for (Key v = 2; v <= top; v *= 2) inst.requests.push_back(v);
    for (Key v = 1; v <= top; v *= 2) y.push_back(v);
    inst.subsequence = y;
  } else if (family == "mtr-bad") {
    need_n(1);
    inst.initial = left_spine(iota_keys(1, n));
    for (Key v = n; v >= 1; --v) inst.requests.push_back(v);
    for (Key v = 2; v <= n; ++v) inst.requests.push_back(v);
    inst.subsequence = iota_keys(1, n);
  } else if (family == "sequential") {
    need_n(1);
    inst.initial = left_spine(iota_keys(1, n));
    inst.requests = iota_keys(1, n);
  } else if (family == "traversal") {
    need_n(1);
    Rng rng(splitmix64(p.seed));
    inst.initial = random_tree(rng, p.n);
    inst.requests = preorder(random_tree(rng, p.n));
  } else if (family == "random") {
    need_n(1);
    Rng rng(splitmix64(p.seed));
    inst.initial = random_tree(rng, p.n);
    inst.requests = random_requests(rng, inst.initial, p.m ? p.m : p.n);
  } else {
    throw Error(ErrorKind::UnknownName, "unknown family '" + family + "'");
  }
  return inst;
}

}  // namespace splaylab
