#include "doctest.h"

#include "splaylab/algorithms.hpp"
#include "splaylab/harness.hpp"

using namespace splaylab;

TEST_CASE("rng") {
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng c(5);
  for (int i = 0; i < 1000; ++i) {
    const auto v = c.uniform(-3, 3);
    CHECK(v >= -3);
    CHECK(v <= 3);
  }
  CHECK(Rng::for_trial(1, 0).next() != Rng::for_trial(1, 1).next());
  CHECK(Rng::for_trial(1, 7).next() == Rng::for_trial(1, 7).next());
  CHECK_THROWS_AS(c.uniform(2, 1), Error);
  // pinned stream value, guards against accidental generator changes
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("families") {
  const Instance s = generate("spine-312", {5, 0, 0, 1});
  CHECK(s.initial == bst_from_sequence({5, 4, 3, 2, 1}));
  CHECK(s.requests == std::vector<Key>{3, 1, 2});
  CHECK(s.subsequence == std::vector<Key>{1, 2});

  const Instance p = generate("powers", {0, 3, 0, 1});
  CHECK(p.initial == left_spine(iota_keys(1, 7)));
  CHECK(p.requests == std::vector<Key>{4, 2, 1, 2, 4});
  CHECK(p.subsequence == std::vector<Key>{1, 2, 4});

  const Instance m = generate("mtr-bad", {4, 0, 0, 1});
  CHECK(m.requests == std::vector<Key>{4, 3, 2, 1, 2, 3, 4});
  CHECK(m.subsequence == std::vector<Key>{1, 2, 3, 4});

  CHECK(generate("sequential", {4, 0, 0, 1}).requests == iota_keys(1, 4));

  const Instance r1 = generate("random", {6, 0, 10, 42});
  const Instance r2 = generate("random", {6, 0, 10, 42});
  CHECK(r1.initial == r2.initial);
  CHECK(r1.requests == r2.requests);
  CHECK(r1.requests.size() == 10);

  const Instance tv = generate("traversal", {50, 0, 0, 3});
  CHECK(tv.requests.size() == 50);
  CHECK(tv.initial.size() == 50);

  CHECK_THROWS_AS(generate("nope", {4, 0, 0, 1}), Error);
  CHECK_THROWS_AS(generate("spine-312", {2, 0, 0, 1}), Error);
  CHECK_THROWS_AS(generate("powers", {0, 0, 0, 1}), Error);
  CHECK(family_names().size() == 6);
}

TEST_CASE("subsequence-overhead families") {
  const Instance s = generate("spine-312", {10000, 0, 0, 1});
  const double r1 = static_cast<double>(algo_cost(Algo::Splay, s.initial, *s.subsequence)) /
                    static_cast<double>(algo_cost(Algo::Splay, s.initial, s.requests));
  CHECK(r1 >= 1.45);
  CHECK(r1 <= 1.55);
  const Instance p = generate("powers", {0, 14, 0, 1});
  const double r2 = static_cast<double>(algo_cost(Algo::Splay, p.initial, *p.subsequence)) /
                    static_cast<double>(algo_cost(Algo::Splay, p.initial, p.requests));
  CHECK(r2 >= 1.9);
  CHECK(r2 <= 2.1);
}

TEST_CASE("probes") {
  const ProbeReport mr = probe("splay-mr-crossings", 3, 50, 200, 9);
  REQUIRE(mr.rows.size() == 3);
  // trial 0 is the small instance where Splay crosses fewer nodes
  CHECK(mr.rows[0][3] == "9");
  CHECK(mr.rows[0][4] == "8");
  const std::string csv = mr.csv();
  CHECK(csv.find("seed=9") != std::string::npos);
  CHECK(csv.find(SPLAYLAB_VERSION) != std::string::npos);
  CHECK(csv.find("guards=") != std::string::npos);
  CHECK(csv == probe("splay-mr-crossings", 3, 50, 200, 9).csv());

  const ProbeReport sr = probe("subseq-ratio", 2, 10000, 10, 1);
  REQUIRE(sr.rows.size() == 2);
  CHECK(sr.rows[0][1] == "spine-312");
  CHECK(std::stod(sr.rows[0].back()) == doctest::Approx(1.5).epsilon(0.05));
  CHECK(sr.rows[1][1] == "powers(k=13)");
  CHECK(std::stod(sr.rows[1].back()) == doctest::Approx(2.0).epsilon(0.05));

  for (const std::string& name : probe_names()) {
    const ProbeReport a = probe(name, 4, 40, 300, 3);
    CHECK(a.csv() == probe(name, 4, 40, 300, 3).csv());
    CHECK(a.min_ratio <= a.median_ratio);
    CHECK(a.median_ratio <= a.max_ratio);
  }
  CHECK_THROWS_AS(probe("nope", 1, 10, 10, 1), Error);
}

TEST_CASE("reports") {
  const Instance f{{3, 1, 4, 2}, bst_from_sequence({3, 1, 2, 4}), std::nullopt};
  CHECK(lambda_report_header() == "instance,m,n,cost_splay,lambda,lambda_prime,zeta,opt\n");
  CHECK(lambda_report_row("f", f, true) == "f,4,4,10,9,8,2,9\n");
  CHECK(lambda_report_row("f", f, false) == "f,4,4,10,9,8,2,\n");
  const std::string row = opt_report_row("f", f);
  CHECK(row.rfind("f,4,4,9,10,", 0) == 0);
}

TEST_CASE("suites") {
  CHECK(suites().size() == 16);
  for (int c = 1; c <= 16; ++c) {
    bool found = false;
    for (const SuiteInfo& s : suites()) found = found || s.criterion == c;
    CHECK(found);
  }
  const SuiteResult g4 = run_suite("g4", {});
  CHECK(g4.passed());
  CHECK(g4.criterion == 1);
  CHECK(g4.text().find("PASS") != std::string::npos);
  CHECK(g4.csv().find("g4,1,") == 0);
  CHECK_THROWS_AS(run_suite("no-such-suite", {}), Error);
  SuiteOptions small;
  small.max_n = 3;
  small.max_m = 2;
  CHECK(run_suite("wilber-equivalence", small).passed());
}
