#include "splaylab/wilber.hpp"

#include <cstdlib>

#include "splaylab/algorithms.hpp"

namespace splaylab {

LevelReport level(const Tree& t, Key x) {
  const std::vector<Key> p = t.path(x);
  LevelReport r;
  r.key = x;
  r.crossing.push_back(p.front());
  for (std::size_t j = 1; j + 1 < p.size(); ++j) {
    bool in_left = p[j] < p[j - 1];
    bool out_left = p[j + 1] < p[j];
    if (in_left != out_left) r.crossing.push_back(p[j]);
  }
  if (p.size() > 1) r.crossing.push_back(p.back());
  r.level = static_cast<int>(r.crossing.size());
  r.bookkeeping = static_cast<int>(p.size()) - r.level;
  return r;
}

int level_of(const Tree& t, Key x) { return level(t, x).level; }

std::vector<Key> crossing_nodes_graphical(const Tree& t, Key x) {
  const std::vector<Key> p = t.path(x);
  std::vector<Key> out{p.front()};
  for (std::size_t j = 1; j + 1 < p.size(); ++j) {
    const Key y = p[j];
    const Key par = *t.parent(y);
    const bool left_child = t.left_child(par) == y;
    if (left_child && t.right_child(y) == p[j + 1]) out.push_back(y);
    if (!left_child && t.left_child(y) == p[j + 1]) out.push_back(y);
  }
  if (p.size() > 1) out.push_back(x);
  return out;
}

std::int64_t lambda(const std::vector<Key>& requests, const Tree& initial) {
  return run_streaming(Algo::MoveToRoot, initial, requests).crossing;
}

std::int64_t lambda(const Instance& inst) {
  check_instance(inst);
  return lambda(inst.requests, inst.initial);
}

std::int64_t lambda_prime(const Instance& inst) {
  check_instance(inst);
  return run_streaming(Algo::Splay, inst.initial, inst.requests).crossing;
}

std::int64_t zeta(const Instance& inst) {
  check_instance(inst);
  return run_streaming(Algo::Splay, inst.initial, inst.requests).bookkeeping;
}

int kappa(const std::vector<Key>& xs, std::size_t i) {
  if (i < 1 || i > xs.size()) throw Error(ErrorKind::InvalidArgument, "kappa index out of range");
  if (i == 1) return 0;
  const Key xi = xs[i - 1];
  std::size_t c = i - 1;
  Key w = xs[c - 1];
  WindowBound vprev = w > xi ? WindowBound::neg_inf() : WindowBound::pos_inf();
  int l = 1;
  auto between = [&](Key y) {
    if (y == xi) return true;
    switch (vprev.kind) {
      case WindowBound::Kind::NegInf: return y < xi;
      case WindowBound::Kind::PosInf: return y > xi;
      default: return vprev.key < xi ? (vprev.key < y && y < xi) : (xi < y && y < vprev.key);
    }
  };
  while (true) {
    if (w == xi) return l - 1;
    std::size_t cn = 0;
    for (std::size_t j = c - 1; j >= 1; --j)
      if (between(xs[j - 1])) {
        cn = j;
        break;
      }
    if (cn == 0) return l - 1;
    // Inside key: closest to x_i on w's side, accessed in (cn, c].
    const bool upper = w > xi;
    std::optional<Key> vl;
    for (std::size_t j = cn + 1; j <= c; ++j) {
      const Key y = xs[j - 1];
      if (y == xi || (y > xi) != upper) continue;
      if (!vl || std::llabs(y - xi) < std::llabs(*vl - xi)) vl = y;
    }
    c = cn;
    w = xs[c - 1];
    vprev = WindowBound::at(*vl);
    ++l;
  }
}

std::int64_t lambda2(const std::vector<Key>& xs) {
  std::int64_t total = static_cast<std::int64_t>(xs.size());
  for (std::size_t i = 1; i <= xs.size(); ++i) total += kappa(xs, i);
  return total;
}

std::int64_t remove_one_gap(const Tree& s, Key x, const std::vector<Key>& z) {
  if (!s.contains(x)) throw Error(ErrorKind::KeyAbsent, "x not in S");
  return lambda(z, s) - lambda(z, access(Algo::MoveToRoot, s, x));
}

}  // namespace splaylab
