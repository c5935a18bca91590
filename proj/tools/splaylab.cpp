#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "splaylab/algorithms.hpp"
#include "splaylab/harness.hpp"
#include "splaylab/opt.hpp"
#include "splaylab/wilber.hpp"

using namespace splaylab;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int cmd_verify(const std::string& suite, const SuiteOptions& opt, const std::string& csv_path) {
  std::vector<std::string> names;
  if (suite == "all") {
    for (const SuiteInfo& s : suites()) names.push_back(s.name);
  } else {
    bool known = false;
    for (const SuiteInfo& s : suites()) known = known || s.name == suite;
    if (!known) {
      std::cerr << "error: unknown suite '" << suite << "'\n";
      return kUsage;
    }
    names.push_back(suite);
  }
  std::cout << "# splaylab " << SPLAYLAB_VERSION << " seed=" << opt.seed
            << " max_n=" << (opt.max_n ? std::to_string(*opt.max_n) : std::string("default"))
            << " max_m=" << (opt.max_m ? std::to_string(*opt.max_m) : std::string("default")) << "\n";
  std::ostringstream csv;
  csv << "suite,criterion,check,status,detail\n";
  bool ok = true;
  for (const std::string& n : names) {
    const SuiteResult r = run_suite(n, opt);
    std::cout << r.text() << std::flush;
    csv << r.csv();
    ok = ok && r.passed();
  }
  if (!csv_path.empty()) {
    std::ofstream f(csv_path);
    if (!f) {
      std::cerr << "error: cannot write " << csv_path << "\n";
      return kUsage;
    }
    f << csv.str();
  }
  return ok ? kPass : kFail;
}

int cmd_run(const std::string& path, const std::string& algo_name, const std::string& reports) {
  std::ifstream f(path);
  if (!f) {
    std::cerr << "error: cannot read " << path << "\n";
    return kUsage;
  }
  std::stringstream buf;
  buf << f.rdbuf();
  const Instance inst = parse_instance(buf.str());
  const Algo algo = parse_algo(algo_name);
  const RunTotals rt = run_streaming(algo, inst.initial, inst.requests);
  std::cout << "# splaylab " << SPLAYLAB_VERSION << " algo=" << to_string(algo) << " n=" << inst.initial.size()
            << " m=" << inst.requests.size() << "\n";
  std::vector<std::string> cols, vals;
  for (const std::string& r : split_commas(reports)) {
    cols.push_back(r);
    if (r == "cost") vals.push_back(std::to_string(rt.cost));
    else if (r == "lambda") vals.push_back(std::to_string(lambda(inst)));
    else if (r == "lambda2") vals.push_back(std::to_string(lambda2(inst.requests)));
    else if (r == "lambda_prime") vals.push_back(std::to_string(lambda_prime(inst)));
    else if (r == "zeta") vals.push_back(std::to_string(zeta(inst)));
    else if (r == "opt") vals.push_back(std::to_string(opt_cost(inst).cost));
    else throw Error(ErrorKind::UnknownName, "unknown report '" + r + "'");
  }
  for (std::size_t i = 0; i < cols.size(); ++i) std::cout << (i ? "," : "") << cols[i];
  std::cout << "\n";
  for (std::size_t i = 0; i < vals.size(); ++i) std::cout << (i ? "," : "") << vals[i];
  std::cout << "\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"splaylab: splay trees, crossing bounds and exact OPT at desk scale"};
  app.set_version_flag("--version", std::string(SPLAYLAB_VERSION));
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run property suites");
  std::string suite;
  std::size_t max_n = 0, max_m = 0;
  std::uint64_t seed = SuiteOptions{}.seed;
  std::string csv_path;
  verify->add_option("--suite", suite, "suite name or 'all'")->required();
  auto* o_n = verify->add_option("--max-n", max_n, "cap exhaustive tree sizes");
  auto* o_m = verify->add_option("--max-m", max_m, "cap exhaustive sequence lengths");
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--csv", csv_path, "also write the CSV report here");

  auto* run = app.add_subcommand("run", "run an algorithm on an instance file");
  std::string inst_path, algo = "splay", reports = "cost";
  run->add_option("--instance", inst_path, "instance file")->required();
  run->add_option("--algo", algo, "splay|mtr|tds");
  run->add_option("--report", reports, "comma list of cost,lambda,lambda2,lambda_prime,zeta,opt");

  auto* probe_cmd = app.add_subcommand("probe", "report-only conjecture probe (CSV)");
  std::string conjecture;
  std::size_t trials = 10, pn = 100, pm = 1000;
  std::uint64_t pseed = 1;
  probe_cmd->add_option("--conjecture", conjecture, "probe name")->required();
  probe_cmd->add_option("--trials", trials, "trials");
  probe_cmd->add_option("--n", pn, "tree size");
  probe_cmd->add_option("--m", pm, "requests");
  probe_cmd->add_option("--seed", pseed, "random seed");

  auto* gen = app.add_subcommand("gen", "generate a family instance");
  std::string family, out;
  std::size_t gn = 0, gk = 0, gm = 0;
  std::uint64_t gseed = 1;
  gen->add_option("--family", family, "family name")->required();
  gen->add_option("--n", gn, "tree size");
  gen->add_option("--k", gk, "exponent (powers)");
  gen->add_option("--m", gm, "requests (random)");
  gen->add_option("--seed", gseed, "random seed");
  gen->add_option("--out", out, "output file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (*verify) {
      SuiteOptions opt;
      opt.seed = seed;
      if (*o_n) opt.max_n = max_n;
      if (*o_m) opt.max_m = max_m;
      return cmd_verify(suite, opt, csv_path);
    }
    if (*run) return cmd_run(inst_path, algo, reports);
    if (*probe_cmd) {
      std::cout << probe(conjecture, trials, pn, pm, pseed).csv();
      return kPass;
    }
    if (*gen) {
      const std::string text = format_instance(generate(family, {gn, gk, gm, gseed}));
      if (out.empty()) {
        std::cout << text;
      } else {
        std::ofstream f(out);
        if (!f) {
          std::cerr << "error: cannot write " << out << "\n";
          return kUsage;
        }
        f << text;
      }
      return kPass;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::UnknownName:
      case ErrorKind::InvalidArgument:
      case ErrorKind::Parse:
        return kUsage;
      default:
        return kFail;
    }
  }
  return kUsage;
}
