// Command-line front end for the nilpal library.
//
//   nilpal [--rank n] [--step k] [--seed s] [--cases m] [--format text|kv] <command> ...
//
// Exit codes: 0 success, 1 usage or parse error, 2 mathematical negative
// (not an automorphism, failed decomposition, failed condition or suite),
// 3 internal assertion.

#include "nilpal/autofile.hpp"
#include "nilpal/autos.hpp"
#include "nilpal/central.hpp"
#include "nilpal/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace nilpal;

enum Exit { kOk = 0, kUsage = 1, kNegative = 2, kInternal = 3 };

struct Options {
  int rank = 2;
  int step = 2;
  std::uint64_t seed = 1;
  int cases = 100;
  std::string format = "text";
  bool rank_given = false, step_given = false;
};

// Collects key/value lines and prints them as "key: value" or "key=value".
class Report {
 public:
  explicit Report(bool kv) : kv_(kv) {}
  void add(const std::string& key, const std::string& value) { lines_.push_back({key, value}); }
  void add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }
  void add(const std::string& key, long long value) { add(key, std::to_string(value)); }
  void print(std::ostream& out) const {
    for (const auto& [k, v] : lines_) out << k << (kv_ ? "=" : ": ") << v << "\n";
  }

 private:
  bool kv_;
  std::vector<std::pair<std::string, std::string>> lines_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Endo load(const std::string& path, const GroupPtr& g) {
  try {
    return parse_automorphism(read_file(path), g);
  } catch (const AutoFileError& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void print_automorphism(const Endo& e, Report& r, bool kv, std::ostream& out) {
  if (kv) {
    for (int i = 1; i <= e.rank(); ++i) r.add("x" + std::to_string(i), render(e.image(i)));
    r.print(out);
  } else {
    r.print(out);
    out << render_automorphism(e);
  }
}

int cmd_normalize(const Options& o, const std::string& text) {
  auto g = NilpotentGroup::get(o.rank, o.step);
  NilElement x = g->parse(text);
  if (o.format == "kv")
    std::cout << "element=" << render(x) << "\n";
  else
    std::cout << render(x) << "\n";
  return kOk;
}

int cmd_auto(const Options& o, const std::string& sub, const std::vector<std::string>& args) {
  auto g = NilpotentGroup::get(o.rank, o.step);
  bool kv = o.format == "kv";
  Report r(kv);
  auto need = [&](std::size_t count, const char* usage) {
    if (args.size() != count) throw CLI::ValidationError(std::string("usage: auto ") + sub + " " + usage);
  };
  auto comment = [&](const std::string& key, const std::string& value) {
    if (kv)
      r.add(key, value);
    else
      r.add("# " + key, value);
  };

  if (sub == "gen") {
    if (args.empty()) throw CLI::ValidationError("usage: auto gen <symbol>...");
    std::vector<GeneratorSymbol> syms;
    for (const auto& a : args) syms.push_back(parse_generator(a));
    comment("factors", render(syms));
    print_automorphism(compose_symbols(syms, g), r, kv, std::cout);
    return kOk;
  }
  if (sub == "eval") {
    need(2, "<file> <expr>");
    Endo e = load(args[0], g);
    NilElement x = g->parse(args[1]);
    NilElement y = apply(e, x);
    if (kv)
      std::cout << "element=" << render(y) << "\n";
    else
      std::cout << render(y) << "\n";
    return kOk;
  }
  if (sub == "compose") {
    need(2, "<first> <second>");
    Endo e = compose(load(args[0], g), load(args[1], g));
    comment("composition", "first " + args[0] + ", then " + args[1]);
    print_automorphism(e, r, kv, std::cout);
    return kOk;
  }
  if (sub == "invert") {
    need(1, "<file>");
    Endo e = load(args[0], g);
    if (!is_automorphism(e)) {
      r.add("error", std::string("not an automorphism (determinant ") + lattice::determinant(e.matrix()).str() + ")");
      r.print(std::cout);
      return kNegative;
    }
    InverseTrace t = inverse_trace(e);
    bool ok = compose(e, t.inverse).is_identity() && compose(t.inverse, e).is_identity();
    if (!ok) throw std::logic_error("inverse failed the round trip");
    comment("algorithm", t.palindromic ? "palindromic" : "layer-lifting");
    comment("factors", std::to_string(t.factors.size()));
    comment("roundtrip", "verified");
    print_automorphism(t.inverse, r, kv, std::cout);
    return kOk;
  }
  if (sub == "classify") {
    need(1, "<file>");
    Endo e = load(args[0], g);
    if (!is_automorphism(e)) {
      r.add("automorphism", false);
      r.print(std::cout);
      return kNegative;
    }
    Classification c = classify(e);
    r.add("automorphism", true);
    r.add("ia", c.is_ia);
    r.add("central", c.is_central);
    r.add("parity", c.parity);
    if (c.palindromic_decided) {
      r.add("elementary_palindromic", c.is_elementary_palindromic);
      r.add("palindromic", c.is_palindromic);
      r.add("pi_level", static_cast<long long>(c.pi_level));
      if (c.permutation) {
        std::string s;
        for (int v : *c.permutation) s += (s.empty() ? "" : " ") + std::to_string(v);
        r.add("permutation", "sigma(" + s + ")");
      }
      for (std::size_t i = 0; i < c.witnesses.size(); ++i) r.add("witness_x" + std::to_string(i + 1), render(c.witnesses[i]));
    } else {
      r.add("elementary_palindromic", std::string("undecided"));
      r.add("palindromic", std::string("undecided"));
      r.add("pi_level", std::string("undecided"));
    }
    for (const auto& d : c.diagnostics) r.add("note", d);
    r.print(std::cout);
    return kOk;
  }
  if (sub == "decompose-central" || sub == "decompose-bglm") {
    need(1, "<file>");
    Endo e = load(args[0], g);
    Decomposition d = sub == "decompose-central" ? decompose_central(e) : decompose_bglm(e);
    for (const auto& f : d.factors) r.add("factor", render(f));
    r.add("factors", static_cast<long long>(d.factors.size()));
    r.add("residual_trivial", d.residual_trivial);
    for (const auto& s : d.diagnostics) r.add("diagnostic", s);
    r.print(std::cout);
    return d.residual_trivial ? kOk : kNegative;
  }
  if (sub == "tame-check") {
    need(1, "<file>");
    Endo e = load(args[0], g);
    TameCheck t = tameness_necessary(e);
    r.add("condition", std::string(t.satisfied ? "PASS" : "FAIL"));
    r.add("residue", render_residue(t.residue));
    for (const auto& s : tameness_diagnostics(t.residue)) r.add("diagnostic", s);
    r.print(std::cout);
    return t.satisfied ? kOk : kNegative;
  }
  throw CLI::ValidationError("unknown auto subcommand '" + sub + "'");
}

int cmd_verify(const Options& o, const std::string& suite) {
  // sensible group sizes when --rank/--step are not given
  static const std::map<std::string, std::pair<int, int>> defaults = {
      {"lemma2.5", {3, 5}}, {"prop2.8", {3, 5}},  {"jacobi", {3, 3}},    {"lemma4.2", {3, 3}}, {"foxtable", {3, 3}},
      {"lemma5.3", {3, 3}}, {"lemma5.4", {4, 3}}, {"thm5.8-n2", {2, 3}}, {"prop3.1", {3, 2}},  {"prop3.3", {3, 2}}};
  SuiteParams p;
  auto it = defaults.find(suite);
  if (it == defaults.end()) throw SuiteError("unknown suite '" + suite + "'");
  p.rank = o.rank_given ? o.rank : it->second.first;
  p.step = o.step_given ? o.step : it->second.second;
  p.seed = o.seed;
  p.cases = o.cases;
  SuiteReport s = run_suite(suite, p);
  Report r(o.format == "kv");
  r.add("suite", suite);
  r.add("rank", static_cast<long long>(p.rank));
  r.add("step", static_cast<long long>(p.step));
  r.add("seed", std::to_string(p.seed));
  r.add("cases", s.cases);
  r.add("failures", s.failures);
  for (const auto& [k, v] : s.facts) r.add(k, v);
  for (const auto& d : s.details) r.add("failure", d);
  r.add("status", std::string(s.passed() ? "PASS" : "FAIL"));
  r.print(std::cout);
  return s.passed() ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact arithmetic in free nilpotent groups and their palindromic automorphisms"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--rank", o.rank, "number of generators n")->check(CLI::Range(1, 64))->each([&](const std::string&) {
    o.rank_given = true;
  });
  app.add_option("--step", o.step, "nilpotency step k")->check(CLI::Range(1, 12))->each([&](const std::string&) {
    o.step_given = true;
  });
  app.add_option("--seed", o.seed, "random seed for the verification suites");
  app.add_option("--cases", o.cases, "number of random cases")->check(CLI::Range(1, 100000000));
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "kv"}));

  std::string text;
  auto* normalize = app.add_subcommand("normalize", "print the normal form of an element");
  normalize->add_option("expr", text, "element in the word grammar")->required();
  normalize->fallthrough();

  std::string sub;
  std::vector<std::string> args;
  auto* aut = app.add_subcommand("auto", "automorphism operations");
  aut->add_option("operation", sub, "gen | eval | compose | invert | classify | decompose-central | decompose-bglm | tame-check")
      ->required()
      ->check(CLI::IsMember({"gen", "eval", "compose", "invert", "classify", "decompose-central", "decompose-bglm", "tame-check"}));
  aut->add_option("args", args, "files, expressions or generator symbols");
  aut->fallthrough();

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "lemma2.5 | prop2.8 | jacobi | lemma4.2 | foxtable | lemma5.3 | lemma5.4 | thm5.8-n2 | prop3.1 | prop3.3")
      ->required();
  verify->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (normalize->parsed()) return cmd_normalize(o, text);
    if (aut->parsed()) return cmd_auto(o, sub, args);
    if (verify->parsed()) return cmd_verify(o, suite);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NotAnAutomorphism& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNegative;
  } catch (const Undecided& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNegative;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
