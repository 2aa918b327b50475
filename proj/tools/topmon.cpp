#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "topmon/factorisation.hpp"
#include "topmon/io.hpp"
#include "topmon/monoid_ops.hpp"
#include "topmon/suites.hpp"

using namespace topmon;

namespace {

struct CommonFlags {
  SuiteOptions opt;
  std::string format = "text";
  std::string out;

  void attach(CLI::App* cmd) {
    cmd->add_option("--window", opt.window, "coordinate window (default 12)");
    cmd->add_option("--depth", opt.depth, "net depth (default 32)");
    cmd->add_option("--level", opt.level, "neighborhood level (default 10)");
    cmd->add_option("--seed", opt.seed, "seed for sampled checks (default 0)");
    cmd->add_option("--qmax", opt.qmax, "denominator bound for the exclusion sweep");
    cmd->add_option("--max-factors", opt.max_factors, "factors in primality witnesses");
    cmd->add_option("--degree", opt.degree, "exponent total bound (default 5)");
    cmd->add_option("--gens", opt.generators, "free-monoid generators (default 4)");
    cmd->add_option("--vars", opt.vars, "series variables (default 2)");
    cmd->add_option("--precision", opt.precision, "series truncation degree (default 8)");
    cmd->add_option("--format", format, "text | structured")
        ->check(CLI::IsMember({"text", "structured"}));
    cmd->add_option("--out", out, "write the report to a file instead of stdout");
  }

  int emit(const SuiteReport& r) const {
    std::string body = format == "structured" ? render_structured(r) : render_text(r);
    if (out.empty()) {
      std::cout << body;
    } else {
      std::ofstream f(out, std::ios::binary);
      if (!f) {
        std::cerr << "cannot write " << out << "\n";
        return 2;
      }
      f << body;
    }
    return r.exit_code();
  }
};

std::string conv_report_text(const Instance& ins, const ConvergenceReport& rep) {
  std::ostringstream os;
  os << conv_status_name(rep.status);
  if (rep.certificate) {
    os << " core-size=" << rep.certificate->core.size() << " level=" << rep.certificate->level
       << " depth=" << rep.certificate->depth << " path=" << rep.certificate->path;
  }
  if (rep.witness) {
    os << " witness=" << rep.witness->kind << " :: " << rep.witness->detail;
    if (rep.witness->limit_outside)
      os << " limit=" << print_element(ins, *rep.witness->limit_outside);
  }
  if (!rep.note.empty()) os << " note=\"" << rep.note << "\"";
  return os.str();
}

int run_eval_product(const std::string& file, const CommonFlags& flags) {
  std::ifstream f(file);
  if (!f) {
    std::cerr << "cannot read " << file << "\n";
    return 2;
  }
  nlohmann::json spec;
  try {
    f >> spec;
  } catch (const std::exception& e) {
    std::cerr << "parse error in " << file << ": " << e.what() << "\n";
    return 2;
  }
  try {
    SuiteOptions opt = flags.opt;
    if (spec.contains("window")) opt.window = spec["window"].get<long long>();
    if (spec.contains("depth")) opt.depth = spec["depth"].get<long long>();
    if (spec.contains("level")) opt.level = spec["level"].get<long long>();
    auto ins = make_instance(spec.at("instance").get<std::string>(), opt.instance_params());
    std::string err;
    auto stream = parse_stream_rule(*ins, spec.at("rule").get<std::string>(), &err);
    if (!stream) {
      std::cerr << "bad rule: " << err << "\n";
      return 2;
    }
    VerifyParams p = opt.verify();
    if (spec.contains("qmax")) {
      p.qmax = spec["qmax"].get<long long>();
      p.enable_qsweep = true;
    }
    std::cout << "STREAM " << print_stream_rule(*ins, *stream) << "\n";
    if (spec.contains("candidate")) {
      auto cand = parse_element(*ins, spec.at("candidate").get<std::string>(), &err);
      if (!cand) {
        std::cerr << "bad candidate: " << err << "\n";
        return 2;
      }
      auto rep = verify_convergence(*ins, *stream, *cand, opt.level, opt.depth, p);
      std::cout << "CONVERGENCE " << conv_report_text(*ins, rep) << "\n";
      try {
        MultisetNF nf = multiset_normal_form(*ins, *stream, opt.depth, p.mult_cap);
        std::cout << "NORMAL-FORM";
        for (auto& [e, m] : nf.entries) std::cout << " " << print_element(*ins, e) << "^" << m;
        std::cout << "\n";
      } catch (const MultiplicityError& e) {
        std::cout << "NORMAL-FORM error: " << e.what() << "\n";
      }
      return rep.converged() ? 0 : 1;
    }
    if (auto div = detect_divergence(*ins, *stream, p)) {
      std::cout << "DIVERGENCE " << div->kind << " :: " << div->detail << "\n";
      return 0;
    }
    std::cout << "DIVERGENCE none-found\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_factor(const std::string& instance_name, const std::string& text,
               const CommonFlags& flags) {
  try {
    SuiteOptions opt = flags.opt;
    auto ins = make_instance(instance_name, opt.instance_params());
    std::string err;
    auto x = parse_element(*ins, text, &err);
    if (!x) {
      std::cerr << "parse error: " << err << "\n";
      return 2;
    }
    auto rep = unique_factorisation_check(*ins, *x, opt.bound(), opt.verify());
    std::cout << "ELEMENT " << print_element(*ins, *x) << "\n";
    std::cout << "FACTORISATIONS " << rep.factorisations.size() << " "
              << check_verdict_name(rep.verdict) << " note=\"" << rep.note << "\"\n";
    for (auto& m : rep.factorisations) std::cout << "  " << print_exponent_map(m) << "\n";
    return rep.verdict == CheckVerdict::Inconclusive ? 1 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic checks for factorisation in topological monoids"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* laws = app.add_subcommand("check-laws", "run the law suite for an instance");
  std::string instance_name;
  laws->add_option("instance", instance_name, "free | qplus | harmonic | series | pointwise | restricted | integers-demo")
      ->required();
  flags.attach(laws);

  auto* demo = app.add_subcommand("demo", "run a scripted counterexample");
  std::string demo_name;
  demo->add_option("name", demo_name, "demo name (see --list)")->required(false);
  bool list_demos = false;
  demo->add_flag("--list", list_demos, "list demo names");
  flags.attach(demo);

  auto* evalp = app.add_subcommand("eval-product", "evaluate a stream spec file");
  std::string spec_file;
  evalp->add_option("spec", spec_file, "JSON stream spec")->required();
  flags.attach(evalp);

  auto* factor = app.add_subcommand("factor", "factor an element into window atoms");
  std::string factor_instance, factor_text;
  factor->add_option("instance", factor_instance, "instance kind")->required();
  factor->add_option("element", factor_text, "element text")->required();
  flags.attach(factor);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (laws->parsed()) return flags.emit(check_laws(instance_name, flags.opt));
    if (demo->parsed()) {
      if (list_demos) {
        for (auto& n : demo_names()) std::cout << n << "\n";
        return 0;
      }
      if (demo_name.empty()) {
        std::cerr << "demo name required (use --list)\n";
        return 2;
      }
      return flags.emit(run_demo(demo_name, flags.opt));
    }
    if (evalp->parsed()) return run_eval_product(spec_file, flags);
    if (factor->parsed()) return run_factor(factor_instance, factor_text, flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
