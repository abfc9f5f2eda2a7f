#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "boxcalc/corpus.hpp"
#include "boxcalc/denotation.hpp"
#include "boxcalc/parse.hpp"
#include "boxcalc/propcheck.hpp"
#include "boxcalc/reduction.hpp"
#include "boxcalc/typing.hpp"

namespace {

using namespace boxcalc;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;   // type / eval / property failure
constexpr int kExitUsage = 2;     // usage or parse error

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TypeMode parse_mode(const std::string& mode) {
  if (mode == "modal") return TypeMode::Modal;
  if (mode == "contextual") return TypeMode::Contextual;
  throw CLI::ValidationError("--mode", "expected 'modal' or 'contextual'");
}

std::vector<Def> load_program(const std::string& path) {
  return parse_program(read_file(path));
}

const Def& find_def(const std::vector<Def>& defs, const std::string& name) {
  for (const Def& d : defs)
    if (d.name == name) return d;
  throw std::runtime_error("no definition named '" + name + "'");
}

int cmd_check(const std::string& file, const std::string& mode_name) {
  TypeMode mode = parse_mode(mode_name);
  auto defs = load_program(file);
  int status = kExitOk;
  for (const Def& d : defs) {
    try {
      Type ty = typecheck(TypingCtx{}, d.term, mode);
      if (ty != d.declared) {
        std::cout << d.name << " : ERROR declared " << print_type(d.declared)
                  << " but synthesized " << print_type(ty) << "\n";
        status = kExitFailure;
      } else {
        std::cout << d.name << " : " << print_type(ty) << "\n";
      }
    } catch (const TypeError& e) {
      std::cout << d.name << " : ERROR " << e.what() << "\n";
      status = kExitFailure;
    }
  }
  return status;
}

void probe_tabulate(const Den& d, const Type& ty) {
  if (ty.kind() == Type::Kind::Arrow && ty.dom().kind() == Type::Kind::Nat) {
    for (uint64_t k = 0; k <= 8; ++k)
      std::cout << "  f " << k << " = " << print_den(d.apply(Den::nat(k))) << "\n";
    return;
  }
  if (ty.kind() == Type::Kind::CtxBox && ty.ctx().empty() &&
      ty.body().kind() == Type::Kind::Arrow && ty.body().dom().kind() == Type::Kind::Nat) {
    for (uint64_t k = 0; k <= 8; ++k)
      std::cout << "  tl " << k << " = " << print_den(d.tail_value().apply(Den::nat(k)))
                << "\n";
    return;
  }
  if (ty.kind() == Type::Kind::CtxBox && !ty.ctx().empty()) {
    bool all_nat = true;
    for (const Type& c : ty.ctx())
      if (c.kind() != Type::Kind::Nat) all_nat = false;
    if (all_nat) {
      for (uint64_t k = 0; k <= 8; ++k) {
        std::vector<Den> args(ty.ctx().size(), Den::nat(k));
        std::cout << "  tail(" << k << ",...) = " << print_den(d.tail_apply(args)) << "\n";
      }
      return;
    }
  }
  std::cout << "  (no nat-domain probe available for " << print_type(ty) << ")\n";
}

int cmd_eval(const std::string& file, const std::string& def_name, bool probe,
             const std::string& mode_name) {
  TypeMode mode = parse_mode(mode_name);
  auto defs = load_program(file);
  const Def& d = find_def(defs, def_name);
  Type ty = typecheck(TypingCtx{}, d.term, mode);
  if (ty != d.declared)
    throw TypeError(TypeErrorKind::ArgMismatch, d.span, "Const",
                    d.name + " declared " + print_type(d.declared) + " but synthesized " +
                        print_type(ty));
  Den den = eval(Valuation{}, d.term);
  std::cout << print_den(den) << "\n";
  if (probe) probe_tabulate(den, ty);
  return kExitOk;
}

int cmd_step(const std::string& file, const std::string& def_name, int count,
             const std::string& mode_name) {
  TypeMode mode = parse_mode(mode_name);
  auto defs = load_program(file);
  const Def& d = find_def(defs, def_name);
  typecheck(TypingCtx{}, d.term, mode);
  if (count <= 0) {
    // enumerate all one-step reducts of the term
    auto steps = step_all(d.term);
    if (steps.empty()) std::cout << "normal form\n";
    for (const StepOutcome& s : steps)
      std::cout << s.rule << " @ " << print_path(s.path) << " : " << print_term(s.result)
                << "\n";
    return kExitOk;
  }
  Term cur = d.term;
  for (int i = 0; i < count; ++i) {
    auto steps = step_all(cur);
    if (steps.empty()) {
      std::cout << "normal form\n";
      return kExitOk;
    }
    const StepOutcome& s = steps.front();
    std::cout << s.rule << " @ " << print_path(s.path) << " : " << print_term(s.result) << "\n";
    cur = s.result;
  }
  return kExitOk;
}

int cmd_normalize(const std::string& file, const std::string& def_name, uint64_t fuel,
                  const std::string& mode_name) {
  TypeMode mode = parse_mode(mode_name);
  auto defs = load_program(file);
  const Def& d = find_def(defs, def_name);
  typecheck(TypingCtx{}, d.term, mode);
  NormalizeReport r = normalize(d.term, fuel);
  std::cout << print_term(r.result) << "\n";
  std::cerr << "steps: " << r.steps
            << (r.status == NormalizeReport::Status::Normal ? " (normal form)"
                                                            : " (fuel exhausted)")
            << "\n";
  return r.status == NormalizeReport::Status::Normal ? kExitOk : kExitFailure;
}

int cmd_props(const std::string& suite, int cases, uint64_t seed, int max_size,
              const std::string& mode_name, bool json, bool inject_unshapely) {
  propcheck::GenConfig cfg;
  cfg.seed = seed;
  cfg.max_size = max_size;
  cfg.mode = parse_mode(mode_name);
  propcheck::PropReport report;
  if (inject_unshapely) {
    if (suite != "shapeliness")
      throw CLI::ValidationError("--inject-unshapely", "only meaningful for --suite shapeliness");
    report = propcheck::run_shapeliness_injected(cases, cfg);
    if (json)
      std::cout << propcheck::report_to_json(report) << "\n";
    else
      std::cout << report.suite << ": " << report.cases << " cases, "
                << report.failures.size() << " failures\n";
    // a healthy harness must surface the injected mismatch
    bool healthy = !report.failures.empty();
    if (!json)
      std::cout << (healthy ? "self-test ok: the injected non-shapely binding was detected\n"
                            : "self-test FAILED: no failures surfaced\n");
    return healthy ? kExitOk : kExitFailure;
  }
  report = propcheck::run_suite(suite, cases, cfg);
  if (json) {
    std::cout << propcheck::report_to_json(report) << "\n";
  } else {
    std::cout << report.suite << ": " << report.cases << " cases, " << report.failures.size()
              << " failures";
    if (report.resource_skips > 0)
      std::cout << " (" << report.resource_skips << " skipped at resource limits)";
    std::cout << "\n";
    for (const auto& f : report.failures)
      std::cout << "  seed " << f.seed << ": " << f.property
                << (f.term.empty() ? "" : " on " + f.term) << "\n";
  }
  return report.ok() ? kExitOk : kExitFailure;
}

int cmd_corpus(bool golden) {
  int status = kExitOk;
  for (const corpus::Entry& e : corpus::entries()) {
    auto ty = typecheck_opt(TypingCtx{}, e.term, e.mode);
    bool ok = ty.has_value() && *ty == e.type;
    std::cout << (ok ? "ok   " : "FAIL ") << e.name << " : " << print_type(e.type)
              << (e.mode == TypeMode::Modal ? "  [modal]" : "") << "\n";
    if (!ok) status = kExitFailure;
  }
  if (golden) {
    for (const corpus::GoldenResult& r : corpus::golden_checks()) {
      std::cout << (r.ok ? "ok   " : "FAIL ") << r.name
                << (r.detail.empty() ? "" : " — " + r.detail) << "\n";
      if (!r.ok) status = kExitFailure;
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"boxcalc: modal and contextual box calculus tools"};
  app.require_subcommand(1);

  std::string file, def_name, mode = "contextual", suite;
  bool probe = false, json = false, inject = false, golden = false;
  int step_count = 0, cases = 100, max_size = 40;
  uint64_t fuel = kDefaultFuel, seed = 1;

  auto* check = app.add_subcommand("check", "typecheck every definition in a file");
  check->add_option("file", file)->required();
  check->add_option("--mode", mode, "modal or contextual");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a definition in the empty valuation");
  eval_cmd->add_option("file", file)->required();
  eval_cmd->add_option("--def", def_name)->required();
  eval_cmd->add_flag("--probe", probe, "tabulate nat-domain functions over 0..8");
  eval_cmd->add_option("--mode", mode);

  auto* step = app.add_subcommand("step", "enumerate or follow single reduction steps");
  step->add_option("file", file)->required();
  step->add_option("--def", def_name)->required();
  step->add_option("-n", step_count, "follow this many leftmost-outermost steps");
  step->add_option("--mode", mode);

  auto* norm = app.add_subcommand("normalize", "reduce a definition to normal form");
  norm->add_option("file", file)->required();
  norm->add_option("--def", def_name)->required();
  norm->add_option("--fuel", fuel, "maximum number of steps")->envname("BOXCALC_FUEL");
  norm->add_option("--mode", mode);

  auto* props = app.add_subcommand("props", "run a property suite on generated terms");
  props->add_option("--suite", suite)->required();
  props->add_option("--cases", cases);
  props->add_option("--seed", seed);
  props->add_option("--max-size", max_size);
  props->add_option("--mode", mode);
  props->add_flag("--json", json, "emit a JSON report");
  props->add_flag("--inject-unshapely", inject,
                  "harness self-test: a non-shapely binding must surface failures");

  auto* corpus_cmd = app.add_subcommand("corpus", "typecheck the built-in corpus");
  corpus_cmd->add_flag("--golden", golden, "also run the worked golden checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*check) return cmd_check(file, mode);
    if (*eval_cmd) return cmd_eval(file, def_name, probe, mode);
    if (*step) return cmd_step(file, def_name, step_count, mode);
    if (*norm) return cmd_normalize(file, def_name, fuel, mode);
    if (*props) return cmd_props(suite, cases, seed, max_size, mode, json, inject);
    if (*corpus_cmd) return cmd_corpus(golden);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const TypeError& e) {
    std::cerr << e.what() << "\n";
    return kExitFailure;
  } catch (const EvalError& e) {
    std::cerr << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
