#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "splaylab/algorithms.hpp"
#include "splaylab/harness.hpp"
#include "splaylab/opt.hpp"
#include "splaylab/wilber.hpp"

namespace splaylab {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

template <class T>
std::string str(T v) {
  return std::to_string(v);
}

std::vector<Key> random_subsequence(Rng& rng, const std::vector<Key>& x) {
  std::vector<Key> y;
  for (Key k : x)
    if (rng.coin()) y.push_back(k);
  return y;
}

std::vector<DequeOp> random_deque_ops(Rng& rng, const Tree& t0, std::size_t m) {
  std::vector<DequeOp> ops;
  std::size_t size = t0.size();
  Key lo = t0.empty() ? 0 : t0.keys().front(), hi = t0.empty() ? 1 : t0.keys().back();
  for (std::size_t i = 0; i < m; ++i) {
    int kind = static_cast<int>(rng.uniform(0, 3));
    if (size == 0 && kind >= 2) kind -= 2;
    switch (kind) {
      case 0: ops.push_back({DequeOpKind::Push, --lo}); ++size; break;
      case 1: ops.push_back({DequeOpKind::Inject, ++hi}); ++size; break;
      case 2: ops.push_back({DequeOpKind::Pop, 0}); --size; break;
      default: ops.push_back({DequeOpKind::Eject, 0}); --size; break;
    }
    if (size == 0) {
      lo = 0;
      hi = 1;
    }
  }
  return ops;
}

}  // namespace

std::string ProbeReport::csv() const {
  std::ostringstream os;
  os << "# splaylab " << SPLAYLAB_VERSION << " probe=" << conjecture << " seed=" << seed << " trials=" << trials
     << " n=" << n << " m=" << m;
  const Guards g = default_guards();
  os << " guards=max_n:" << (guard_override_enabled() ? std::string("none") : str(g.max_n))
     << ",max_m:" << (guard_override_enabled() ? std::string("none") : str(g.max_m)) << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << "\n";
  }
  os << "# summary " << ratio_column << ": min=" << fmt(min_ratio) << " median=" << fmt(median_ratio)
     << " mean=" << fmt(mean_ratio) << " max=" << fmt(max_ratio) << "\n";
  return os.str();
}

std::vector<std::string> probe_names() {
  return {"splay-mr-crossings", "monotone-splay-crossings", "splay-bookkeeping",
          "deque-linear",       "traversal-linear",         "subseq-ratio"};
}

ProbeReport probe(const std::string& conjecture, std::size_t trials, std::size_t n, std::size_t m, std::uint64_t seed) {
  const auto names = probe_names();
  if (std::find(names.begin(), names.end(), conjecture) == names.end())
    throw Error(ErrorKind::UnknownName, "unknown conjecture '" + conjecture + "'");
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "probe needs n >= 1");
  ProbeReport r;
  r.conjecture = conjecture;
  r.trials = trials;
  r.n = n;
  r.m = m;
  r.seed = seed;
  std::vector<double> ratios;
  auto add = [&](std::vector<std::string> row, double ratio) {
    row.push_back(fmt(ratio));
    r.rows.push_back(std::move(row));
    ratios.push_back(ratio);
  };
  const double dn = static_cast<double>(n);

  if (conjecture == "splay-mr-crossings" || conjecture == "splay-bookkeeping" ||
      conjecture == "monotone-splay-crossings") {
    const bool mr = conjecture == "splay-mr-crossings";
    const bool bk = conjecture == "splay-bookkeeping";
    if (mr) r.columns = {"trial", "n", "m", "lambda", "lambda_prime", "ratio_lambda_prime_over_lambda_plus_n"};
    else if (bk) r.columns = {"trial", "n", "m", "lambda_prime", "zeta", "ratio_zeta_over_lambda_prime_plus_n"};
    else r.columns = {"trial", "n", "m", "m_sub", "lambda_prime_x", "lambda_prime_y", "ratio_y_over_x_plus_n"};
    // Trial 0 is the small instance where Splay crosses fewer nodes than
    // Move-to-Root.
    for (std::size_t t = 0; t < trials; ++t) {
      Instance inst;
      if (mr && t == 0) {
        inst.initial = bst_from_sequence({3, 1, 2, 4});
        inst.requests = {3, 1, 4, 2};
      } else {
        Rng rng = Rng::for_trial(seed, t);
        inst.initial = random_tree(rng, n);
        inst.requests = random_requests(rng, inst.initial, m);
      }
      const double size = static_cast<double>(inst.initial.size());
      const RunTotals sp = run_streaming(Algo::Splay, inst.initial, inst.requests);
      std::vector<std::string> row{str(t), str(inst.initial.size()), str(inst.requests.size())};
      if (mr) {
        const std::int64_t lam = lambda(inst);
        row.insert(row.end(), {str(lam), str(sp.crossing)});
        add(row, static_cast<double>(sp.crossing) / (static_cast<double>(lam) + size));
      } else if (bk) {
        row.insert(row.end(), {str(sp.crossing), str(sp.bookkeeping)});
        add(row, static_cast<double>(sp.bookkeeping) / (static_cast<double>(sp.crossing) + size));
      } else {
        Rng rng = Rng::for_trial(seed ^ 0x5bd1e995ULL, t);
        const auto y = random_subsequence(rng, inst.requests);
        const RunTotals spy = run_streaming(Algo::Splay, inst.initial, y);
        row.insert(row.end(), {str(y.size()), str(sp.crossing), str(spy.crossing)});
        add(row, static_cast<double>(spy.crossing) / (static_cast<double>(sp.crossing) + size));
      }
    }
    r.ratio_column = r.columns.back();
  } else if (conjecture == "deque-linear") {
    r.columns = {"trial", "n", "m", "cost", "ratio_cost_over_m_plus_n"};
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng = Rng::for_trial(seed, t);
      const Tree t0 = random_tree(rng, n);
      const auto ops = random_deque_ops(rng, t0, m);
      const DequeResult d = deque_run(t0, ops);
      add({str(t), str(n), str(m), str(d.cost)}, static_cast<double>(d.cost) / static_cast<double>(m + n));
    }
    r.ratio_column = r.columns.back();
  } else if (conjecture == "traversal-linear") {
    r.columns = {"trial", "n", "cost_preorder_same", "cost_preorder_other", "ratio_other_over_n",
                 "ratio_same_over_n"};
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng = Rng::for_trial(seed, t);
      const Tree t1 = random_tree(rng, n);
      const Tree t2 = random_tree(rng, n);
      const std::int64_t same = algo_cost(Algo::Splay, t1, preorder(t1));
      const std::int64_t other = algo_cost(Algo::Splay, t1, preorder(t2));
      add({str(t), str(n), str(same), str(other), fmt(static_cast<double>(other) / dn)}, static_cast<double>(same) / dn);
    }
    r.ratio_column = r.columns.back();
  } else {  // subseq-ratio
    r.columns = {"trial", "family", "n", "cost_x", "cost_y", "ratio_y_over_x"};
    auto fam = [&](const std::string& label, const Instance& inst, std::size_t t) {
      const std::int64_t cx = algo_cost(Algo::Splay, inst.initial, inst.requests);
      const std::int64_t cy = algo_cost(Algo::Splay, inst.initial, *inst.subsequence);
      add({str(t), label, str(inst.initial.size()), str(cx), str(cy)}, static_cast<double>(cy) / static_cast<double>(cx));
    };
    std::size_t k = 1;
    while ((std::size_t{2} << k) - 1 <= n) ++k;
    fam("spine-312", generate("spine-312", {std::max<std::size_t>(n, 3), 0, 0, seed}), 0);
    fam("powers(k=" + str(k) + ")", generate("powers", {0, k, 0, seed}), 1);
    for (std::size_t t = 2; t < trials; ++t) {
      Rng rng = Rng::for_trial(seed, t);
      Instance inst;
      inst.initial = random_tree(rng, n);
      inst.requests = random_requests(rng, inst.initial, m);
      inst.subsequence = random_subsequence(rng, inst.requests);
      fam("random", inst, t);
    }
    r.ratio_column = r.columns.back();
  }

  if (!ratios.empty()) {
    std::vector<double> s = ratios;
    std::sort(s.begin(), s.end());
    r.min_ratio = s.front();
    r.max_ratio = s.back();
    r.median_ratio = s[s.size() / 2];
    r.mean_ratio = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
  }
  return r;
}

std::string lambda_report_header() { return "instance,m,n,cost_splay,lambda,lambda_prime,zeta,opt\n"; }

std::string lambda_report_row(const std::string& id, const Instance& inst, bool with_opt) {
  const RunTotals sp = run_streaming(Algo::Splay, inst.initial, inst.requests);
  std::string opt = "";
  if (with_opt) {
    try {
      opt = str(opt_cost(inst).cost);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::GuardExceeded) throw;
    }
  }
  return id + "," + str(inst.requests.size()) + "," + str(inst.initial.size()) + "," + str(sp.cost) + "," +
         str(lambda(inst)) + "," + str(sp.crossing) + "," + str(sp.bookkeeping) + "," + opt + "\n";
}

std::string opt_report_header() {
  return "instance,m,n,opt,splay_cost,mtr_cost,lambda,ratio_splay_opt,ratio_mtr_opt,ratio_lambda_opt\n";
}

std::string opt_report_row(const std::string& id, const Instance& inst) {
  const std::int64_t opt = opt_cost(inst).cost;
  const std::int64_t sc = algo_cost(Algo::Splay, inst.initial, inst.requests);
  const std::int64_t mc = algo_cost(Algo::MoveToRoot, inst.initial, inst.requests);
  const std::int64_t lam = lambda(inst);
  auto ratio = [&](std::int64_t v) { return opt ? fmt(static_cast<double>(v) / static_cast<double>(opt)) : std::string(""); };
  return id + "," + str(inst.requests.size()) + "," + str(inst.initial.size()) + "," + str(opt) + "," + str(sc) +
         "," + str(mc) + "," + str(lam) + "," + ratio(sc) + "," + ratio(mc) + "," + ratio(lam) + "\n";
}

}  // namespace splaylab
