// wskein: evaluate, inspect, scramble and verify welded link diagrams.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "wskein/wskein.hpp"

using namespace wskein;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kInputError = 1, kCheckFailed = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string file;
  std::string mode = "extended";
  std::string nu;  // "", "1", "-1", "symbolic"
  std::vector<std::string> sets;
  std::string form = "ab";
  std::uint64_t seed = 1;
  std::size_t trials = 200;
  std::size_t moves = 20;
  std::size_t size_cap = 12;
  unsigned threads = 1;
  std::string output;
  bool json = false;
};

Diagram load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    Diagram d = parse_diagram(ss.str());
    if (auto errs = validate(d); !errs.empty()) throw InputError(path + ": " + errs.front());
    return d;
  } catch (const ParseError& e) {
    throw InputError(path + ":" + e.what());
  }
}

CoefficientSystem family(const Config& c, bool allow_generic = false) {
  std::optional<int> nu;
  if (c.nu == "1" || c.nu == "+1") nu = 1;
  else if (c.nu == "-1") nu = -1;
  else if (!c.nu.empty() && c.nu != "symbolic") throw InputError("--nu takes 1, -1 or symbolic");
  if (c.mode == "extended") {
    if (nu && *nu != 1) throw InputError("extended mode fixes nu = 1");
    if (c.nu == "symbolic") throw InputError("extended mode fixes nu = 1");
    return CoefficientSystem::extended();
  }
  if (c.mode == "welded") return CoefficientSystem::welded(nu);
  if (c.mode == "generic" && allow_generic) return CoefficientSystem::generic();
  throw InputError("unknown mode '" + c.mode + "'");
}

Assignment assignments(const Config& c) {
  Assignment out;
  for (const auto& s : c.sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw InputError("--set expects name=value, got '" + s + "'");
    std::string name = s.substr(0, eq), value = s.substr(eq + 1);
    if (name != "r" && name != "s") throw InputError("--set accepts r and s only");
    if (value == "+1") value = "1";
    if (value != "1" && value != "-1") throw InputError("--set " + name + " takes +1 or -1");
    out[name] = Fraction::integer(std::stoi(value));
  }
  return out;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw InputError(path + ": cannot write");
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

BracketOptions bracket_options(const Config& c) { return {std::max(1u, c.threads), WenPolicy::Strict}; }

// eval

int cmd_eval(const Config& c) {
  const Diagram d = load(c.file);
  const CoefficientSystem cs = family(c);
  if (c.form != "ab" && c.form != "alphabeta" && c.form != "lambda") throw InputError("--form takes ab, alphabeta or lambda");
  if (c.form == "lambda" && cs.mode != Mode::Extended) throw InputError("lambda output requires extended mode");
  Fraction y = y_invariant(d, cs, bracket_options(c));
  const Assignment asg = assignments(c);
  if (!asg.empty()) y = substitute(y, asg);
  std::string value;
  if (c.form == "ab")
    value = to_string(y);
  else if (c.form == "alphabeta")
    value = to_string(to_alpha_beta(y));
  else
    value = to_string(dehomogenize(to_alpha_beta(y)));
  Output out(c.output);
  if (c.json) {
    json j = {{"file", c.file}, {"family", cs.describe()}, {"form", c.form}, {"value", value}};
    if (c.form == "ab") {
      j["numerator"] = to_string(y.numerator());
      j["delta_power"] = y.delta_power();
    }
    out.os() << j.dump(2) << "\n";
  } else {
    out.os() << value << "\n";
  }
  return kOk;
}

// info

int cmd_info(const Config& c) {
  const Diagram d = load(c.file);
  std::size_t pos = 0, neg = 0;
  for (const auto& x : d.classical) (x.sign == Sign::Positive ? pos : neg)++;
  const auto vw = virtual_writhe(d);
  Output out(c.output);
  if (c.json) {
    json j = {{"file", c.file},
              {"classical", d.classical.size()},
              {"positive", pos},
              {"negative", neg},
              {"writhe", writhe(d)},
              {"virtual", vw.count},
              {"virtual_parity", vw.parity},
              {"wens", wen_count(d)},
              {"wen_parity", wen_count(d) % 2},
              {"components", components(d)},
              {"free_loops", d.free_loops}};
    out.os() << j.dump(2) << "\n";
  } else {
    out.os() << "classical " << d.classical.size() << " (" << pos << " positive, " << neg << " negative)\n"
             << "writhe " << writhe(d) << "\n"
             << "virtual " << vw.count << " (parity " << vw.parity << ")\n"
             << "wens " << wen_count(d) << " (parity " << wen_count(d) % 2 << ")\n"
             << "components " << components(d) << "\n";
  }
  return kOk;
}

// scramble

int cmd_scramble(const Config& c) {
  const Diagram d = load(c.file);
  ScrambleOptions opt;
  opt.moves = c.moves;
  opt.size_cap = c.size_cap;
  if (c.mode == "welded" && !family(c).supports_wens()) std::erase_if(opt.kinds, involves_wens);
  auto res = scramble(d, c.seed, opt);
  Output out(c.output);
  if (c.json) {
    json j = {{"file", c.file}, {"seed", c.seed}, {"moves", res.log}, {"diagram", serialize(res.diagram)}};
    out.os() << j.dump(2) << "\n";
  } else {
    out.os() << "# scrambled from " << c.file << " with seed " << c.seed << "\n";
    for (const auto& m : res.log) out.os() << "# " << m << "\n";
    out.os() << serialize(res.diagram);
  }
  return kOk;
}

// check-invariance

int cmd_check(const Config& c) {
  const Diagram d = load(c.file);
  const CoefficientSystem cs = family(c);
  InvarianceOptions opt;
  opt.seed = c.seed;
  opt.trials = c.trials;
  opt.scramble.moves = c.moves;
  opt.scramble.size_cap = c.size_cap;
  opt.bracket = bracket_options(c);
  auto rep = check_invariance(d, cs, opt);
  Output out(c.output);
  if (c.json) {
    json j = {{"file", c.file},        {"family", cs.describe()}, {"seed", c.seed}, {"trials", rep.trials_run},
              {"ok", rep.ok},          {"expected", to_string(rep.expected)}};
    if (!rep.ok) {
      j["failed_trial"] = *rep.failed_trial;
      j["got"] = to_string(*rep.got);
      j["moves"] = rep.moves;
      j["diagram"] = serialize(rep.failing);
    }
    out.os() << j.dump(2) << "\n";
  } else if (rep.ok) {
    out.os() << "ok: " << rep.trials_run << " scrambles of " << c.file << " preserve Y = " << to_string(rep.expected)
             << "\n";
  } else {
    out.os() << "FAIL at trial " << *rep.failed_trial << "\n"
             << "expected " << to_string(rep.expected) << "\n"
             << "got      " << to_string(*rep.got) << "\n"
             << "moves:";
    for (const auto& m : rep.moves) out.os() << " " << m;
    out.os() << "\n" << serialize(rep.failing);
  }
  return rep.ok ? kOk : kCheckFailed;
}

// verify-moves

json set_json(const ConstraintSet& s) {
  json eqs = json::array();
  for (const auto& e : s.equations) {
    std::vector<std::string> sources{e.source};
    sources.insert(sources.end(), e.also.begin(), e.also.end());
    eqs.push_back({{"sources", sources}, {"equation", to_string(e.reduced) + " = 0"}, {"raw", to_string(e.raw)}});
  }
  return {{"move", s.move}, {"closures", s.closures}, {"nontrivial", s.equations.size()}, {"equations", eqs}};
}

void print_set(std::ostream& os, const std::string& title, const ConstraintSet& s) {
  os << title << ": " << s.closures << " closures, " << s.equations.size() << " nontrivial\n";
  for (const auto& e : s.equations) {
    os << "  " << to_string(e.reduced) << " = 0    [" << e.source;
    for (const auto& a : e.also) os << ", " << a;
    os << "]\n";
  }
}

int verify_generic(const Config& c) {
  const Derivation d = derive_constraints();
  const bool refs = std::all_of(d.f1_matches_reference.begin(), d.f1_matches_reference.end(), [](bool b) { return b; });
  const bool branches = std::all_of(d.branches.begin(), d.branches.end(), [](const auto& b) { return b.second; });
  const bool ok = d.r2.equations.size() == 3 && d.f1.closures == 15 && d.f1.equations.size() == 3 && refs && branches &&
                  d.m.empty() && d.v3.empty() && d.r3.empty();
  Output out(c.output);
  if (c.json) {
    json br = json::array();
    for (const auto& [name, good] : d.branches) br.push_back({{"branch", name}, {"satisfies_f1", good}});
    json j = {{"family", "generic"},
              {"r2", set_json(d.r2)},
              {"r2_closures", set_json(d.r2_closures)},
              {"f1", set_json(d.f1)},
              {"f1_matches_displayed", d.f1_matches_reference},
              {"f1_branches", br},
              {"m", set_json(d.m)},
              {"v3", set_json(d.v3)},
              {"r3_with_solution", set_json(d.r3)},
              {"ok", ok}};
    out.os() << j.dump(2) << "\n";
    return ok ? kOk : kCheckFailed;
  }
  auto& os = out.os();
  os << "family: generic (a, b, c; x, y, z; t)\n\n";
  print_set(os, "r2 (by pairing coefficient)", d.r2);
  print_set(os, "r2 (by closure)", d.r2_closures);
  print_set(os, "f1", d.f1);
  for (std::size_t i = 0; i < d.f1_matches_reference.size(); ++i)
    os << "  displayed equation " << i + 1 << ": " << (d.f1_matches_reference[i] ? "matched" : "NOT matched") << "\n";
  for (const auto& [name, good] : d.branches) os << "  branch " << name << ": " << (good ? "satisfies f1" : "FAILS f1") << "\n";
  os << "\n";
  print_set(os, "m (no constraints)", d.m);
  print_set(os, "v3 (no constraints)", d.v3);
  print_set(os, "r3 (r2/f1 solution imposed)", d.r3);
  os << "\n" << (ok ? "ok" : "FAIL") << "\n";
  return ok ? kOk : kCheckFailed;
}

json report_json(const VerificationReport& rep) {
  json checks = json::array();
  for (const auto& m : rep.checks)
    checks.push_back({{"move", m.move},
                      {"closures", m.closures},
                      {"nontrivial", m.nontrivial},
                      {"pass", m.pass},
                      {"required", m.required},
                      {"residuals", m.residuals},
                      {"note", m.note}});
  return {{"family", rep.family}, {"ok", rep.ok()}, {"checks", checks}};
}

void print_report(std::ostream& os, const VerificationReport& rep) {
  for (const auto& m : rep.checks) {
    std::string status = m.pass ? "pass" : m.required ? "FAIL" : "fail (not required)";
    os << "  " << m.move << std::string(m.move.size() < 40 ? 40 - m.move.size() : 1, ' ') << m.closures << " closures  "
       << m.nontrivial << " nontrivial  " << status << "\n";
    if (!m.note.empty()) os << "      " << m.note << "\n";
    for (const auto& r : m.residuals) os << "      " << r << "\n";
  }
}

int verify_solved(const Config& c, const CoefficientSystem& cs) {
  const auto sol = verify_solution(cs);
  const auto table = verify_table(cs);
  const bool ok = sol.ok() && table.ok();
  Output out(c.output);
  if (c.json) {
    out.os() << json{{"solution", report_json(sol)}, {"table", report_json(table)}, {"ok", ok}}.dump(2) << "\n";
  } else {
    auto& os = out.os();
    os << "family: " << cs.describe() << "\n\nderivation checks\n";
    print_report(os, sol);
    os << "\nmove table\n";
    print_report(os, table);
    os << "\n" << (ok ? "ok" : "FAIL") << "\n";
  }
  return ok ? kOk : kCheckFailed;
}

int cmd_verify(const Config& c) {
  const CoefficientSystem cs = family(c, true);
  return cs.solved() ? verify_solved(c, cs) : verify_generic(c);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skein invariant of welded and extended welded links"};
  app.require_subcommand(1);
  Config c;

  auto common = [&](CLI::App* sub, bool file, bool coeffs) {
    if (file) sub->add_option("file", c.file, "diagram file")->required();
    if (coeffs) {
      sub->add_option("--mode", c.mode, "welded | extended")->capture_default_str();
      sub->add_option("--nu", c.nu, "1, -1 or symbolic (welded mode)");
      sub->add_option("--threads", c.threads, "state-sum worker threads")->capture_default_str();
    }
    sub->add_option("-o,--output", c.output, "write to this file instead of stdout");
    sub->add_flag("--json", c.json, "structured output");
  };
  auto scrambling = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed)->capture_default_str();
    sub->add_option("--moves", c.moves, "moves per scramble")->capture_default_str();
    sub->add_option("--size-cap", c.size_cap, "classical crossings above which removals are favoured")
        ->capture_default_str();
  };

  auto* eval = app.add_subcommand("eval", "print Y");
  common(eval, true, true);
  eval->add_option("--set", c.sets, "r=±1 or s=±1");
  eval->add_option("--form", c.form, "ab | alphabeta | lambda")->capture_default_str();

  auto* info = app.add_subcommand("info", "diagram statistics");
  common(info, true, false);

  auto* scr = app.add_subcommand("scramble", "apply random moves");
  common(scr, true, false);
  scr->add_option("--mode", c.mode, "welded mode leaves out wen moves unless --nu 1");
  scr->add_option("--nu", c.nu);
  scrambling(scr);

  auto* chk = app.add_subcommand("check-invariance", "compare Y before and after random moves");
  common(chk, true, true);
  scrambling(chk);
  chk->add_option("--trials", c.trials)->capture_default_str();

  auto* ver = app.add_subcommand("verify-moves", "re-derive and check the coefficient constraints");
  common(ver, false, true);
  ver->callback([&] {});
  ver->get_option("--mode")->description("generic | welded | extended");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*eval) return cmd_eval(c);
    if (*info) return cmd_info(c);
    if (*scr) return cmd_scramble(c);
    if (*chk) return cmd_check(c);
    if (*ver) return cmd_verify(c);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const UnsupportedDiagram& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
