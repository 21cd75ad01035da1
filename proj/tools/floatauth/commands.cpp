#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "floatauth/congruence.hpp"
#include "floatauth/explore.hpp"
#include "floatauth/generate.hpp"
#include "floatauth/lts.hpp"
#include "floatauth/reduction.hpp"
#include "floatauth/syntax.hpp"
#include "floatauth/typecheck.hpp"

namespace cli {

using namespace floatauth;
namespace fs = std::filesystem;

std::string Report::to_json() const {
  json diags = json::array();
  for (const auto& d : diagnostics) {
    json j{{"severity", d.severity}, {"message", d.message}};
    if (d.line) j["span"] = {{"line", d.line}, {"column", d.column}};
    diags.push_back(j);
  }
  json j{{"command", command}, {"status", ok ? "ok" : "fail"}, {"payload", payload}, {"diagnostics", diags}};
  return j.dump();
}

std::string Report::to_human() const {
  std::string out;
  for (const auto& line : text) out += line + "\n";
  for (const auto& d : diagnostics) {
    out += d.severity;
    if (d.line) out += " at " + std::to_string(d.line) + ":" + std::to_string(d.column);
    out += ": " + d.message + "\n";
  }
  return out;
}

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  buf << in.rdbuf();
  return buf.str();
}

namespace {

Report failure(const std::string& command, int code, const std::string& message, int line = 0, int column = 0) {
  Report r;
  r.command = command;
  r.ok = false;
  r.exit_code = code;
  r.diagnostics.push_back({"error", message, line, column});
  return r;
}

// Loads FILE into `file`; on failure returns the report to emit instead.
std::optional<Report> load(const std::string& command, const std::string& path, SourceFile& file) {
  try {
    file = parse(read_input(path));
  } catch (const ParseError& e) {
    return failure(command, 2, e.message(), e.line(), e.column());
  } catch (const std::exception& e) {
    return failure(command, 2, e.what());
  }
  return std::nullopt;
}

json names(const NameSet& s) {
  json out = json::array();
  for (const auto& n : s) out.push_back(n.text);
  return out;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : sep) + x;
  return out;
}

std::vector<std::string> texts(const NameSet& s) {
  std::vector<std::string> out;
  for (const auto& n : s) out.push_back(n.text);
  return out;
}

json redex_json(const Redex& r) {
  return {{"kind", to_string(r.kind)},
          {"subject", r.subject.text},
          {"object", r.object.text},
          {"context", print_context(r.sites)},
          {"replicated", r.replicated}};
}

std::string describe(const Redex& r) {
  std::string what = r.kind == RedexKind::Comm ? r.subject.text + "!" + r.object.text
                                               : r.subject.text + "<" + r.object.text + ">";
  return to_string(r.kind) + " " + what + " in " + print_context(r.sites);
}

std::string describe(const ErrorWitness& w) {
  return describe(w.redex) + ", lacking " + to_string(w.missing);
}

}  // namespace

Report cmd_parse(const std::string& path) {
  SourceFile file;
  if (auto err = load("parse", path, file)) return *err;
  Report r;
  r.command = "parse";
  const Process& p = file.process;
  json assumptions = json::array();
  for (const auto& a : file.assumptions) assumptions.push_back({{"name", a.name.text}, {"type", to_string(a.type)}});
  std::vector<std::string> syms;
  for (const auto& s : symbols(p)) syms.push_back("#" + s.id);
  WellFormedness wf = well_formed(p);
  r.payload = {{"source", print(file)},
               {"assumptions", assumptions},
               {"nodes", p.size()},
               {"free_names", names(free_names(p))},
               {"bound_names", names(bound_names(p))},
               {"symbols", syms},
               {"well_formed", wf.ok()}};
  std::istringstream src(print(file));
  for (std::string line; std::getline(src, line);) r.text.push_back(line);
  r.text.push_back("-- " + std::to_string(p.size()) + " nodes, free names {" + join(texts(free_names(p)), ", ") +
                   "}, " + std::to_string(file.assumptions.size()) + " assumptions");
  if (!wf.ok()) r.diagnostics.push_back({"warning", "not well-formed: " + wf.message()});
  return r;
}

Report cmd_check(const std::string& path) {
  SourceFile file;
  if (auto err = load("check", path, file)) return *err;
  Report r;
  r.command = "check";
  Verdict v = check(file);
  r.text.push_back(to_string(v));
  if (std::holds_alternative<WellTyped>(v)) {
    r.payload = {{"verdict", "welltyped"}};
  } else if (const auto* n = std::get_if<NotClosed>(&v)) {
    json anti = json::array();
    for (const auto& m : n->antichain.minimal()) anti.push_back(to_string(m));
    r.payload = {{"verdict", "notclosed"}, {"antichain", anti}};
    r.ok = false;
    r.exit_code = 1;
  } else {
    const auto& u = std::get<Untypable>(v);
    r.payload = {{"verdict", "untypable"}, {"reason", u.reason}};
    r.ok = false;
    r.exit_code = u.kind == Untypable::Kind::BadAssumption ? 2 : 1;
    if (r.exit_code == 2) r.diagnostics.push_back({"error", u.reason});
  }
  return r;
}

namespace {

void explore_into(Report& r, const Process& p, std::size_t budget, bool errors_only) {
  ExploreOptions eo;
  eo.budget = budget;
  StateGraph g = explore(p, eo);
  json states = json::array();
  std::size_t error_states = 0;
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    const auto& s = g.states[i];
    json errs = json::array();
    for (const auto& w : s.errors) errs.push_back({{"redex", redex_json(w.redex)}, {"missing", to_string(w.missing)}});
    error_states += !s.errors.empty();
    if (!errors_only || !s.errors.empty())
      states.push_back({{"id", i},
                        {"depth", s.depth},
                        {"process", print(s.process)},
                        {"successors", s.successors},
                        {"expanded", s.expanded},
                        {"errors", errs}});
    if (errors_only && s.errors.empty()) continue;
    std::string line = "s" + std::to_string(i) + " [depth " + std::to_string(s.depth) + "] " + print(s.process);
    r.text.push_back(line);
    if (!errors_only && !s.successors.empty()) {
      std::vector<std::string> succ;
      for (auto k : s.successors) succ.push_back("s" + std::to_string(k));
      r.text.push_back("  -> " + join(succ, ", "));
    }
    for (const auto& w : s.errors) r.text.push_back("  error: " + describe(w));
  }
  r.payload = {{"states", states},
               {"state_count", g.states.size()},
               {"edge_count", g.edge_count()},
               {"error_states", error_states},
               {"budget", budget},
               {"budget_exhausted", g.budget_exhausted}};
  r.text.push_back(std::to_string(g.states.size()) + " states, " + std::to_string(g.edge_count()) + " edges, " +
                   std::to_string(error_states) + " error states");
  if (g.budget_exhausted)
    r.diagnostics.push_back(
        {"warning", "state budget of " + std::to_string(budget) + " exhausted; the graph is partial"});
}

}  // namespace

Report cmd_reduce(const std::string& path, const ReduceOptions& opts) {
  SourceFile file;
  if (auto err = load("reduce", path, file)) return *err;
  Report r;
  r.command = "reduce";
  const Process& p = file.process;

  if (opts.all) {
    explore_into(r, p, opts.budget, false);
    return r;
  }

  if (opts.steps) {
    json trace = json::array({print(p)});
    r.text.push_back("0: " + print(p));
    Process cur = p;
    std::string stop = "limit";
    for (std::size_t k = 1; k <= *opts.steps; ++k) {
      std::optional<Process> next;
      for (const auto& s : steps(cur))
        if (s.result) {
          next = s.result;
          break;
        }
      if (!next) {
        stop = is_error(cur) ? "error" : "stuck";
        break;
      }
      cur = *next;
      trace.push_back(print(cur));
      r.text.push_back(std::to_string(k) + ": " + print(cur));
    }
    if (trace.size() - 1 == *opts.steps && reduce(cur).empty()) stop = is_error(cur) ? "error" : "stuck";
    r.payload = {{"trace", trace}, {"stopped", stop}};
    r.text.push_back("-- " + std::to_string(trace.size() - 1) + " steps, stopped: " + stop);
    return r;
  }

  json reducts = json::array();
  for (const auto& q : reduce(p)) {
    reducts.push_back(print(q));
    r.text.push_back("-> " + print(q));
  }
  json errs = json::array();
  for (const auto& w : error_witnesses(p)) {
    errs.push_back({{"redex", redex_json(w.redex)}, {"missing", to_string(w.missing)}});
    r.text.push_back("error: " + describe(w));
  }
  if (reducts.empty() && errs.empty()) r.text.push_back("no reductions");
  r.payload = {{"reducts", reducts}, {"errors", errs}};
  return r;
}

Report cmd_errors(const std::string& path, bool all, std::size_t budget) {
  SourceFile file;
  if (auto err = load("errors", path, file)) return *err;
  Report r;
  r.command = "errors";
  bool found = false;
  if (all) {
    explore_into(r, file.process, budget, true);
    found = r.payload["error_states"].get<std::size_t>() > 0;
  } else {
    json errs = json::array();
    for (const auto& w : error_witnesses(file.process)) {
      errs.push_back({{"redex", redex_json(w.redex)}, {"missing", to_string(w.missing)}});
      r.text.push_back("error: " + describe(w));
    }
    found = !errs.empty();
    r.payload = {{"errors", errs}};
    if (!found) r.text.push_back("no error");
  }
  r.ok = !found;
  r.exit_code = found ? 1 : 0;
  return r;
}

Report cmd_lts(const std::string& path, const std::optional<std::vector<std::string>>& universe) {
  SourceFile file;
  if (auto err = load("lts", path, file)) return *err;
  Report r;
  r.command = "lts";
  const Process& p = file.process;
  NameSet u;
  if (universe) {
    for (const auto& n : *universe) {
      if (!is_identifier(n) || is_keyword(n)) return failure("lts", 2, "bad name in --universe: '" + n + "'");
      u.insert(Name{n});
    }
  } else {
    u = free_names(p);
  }
  json ts = json::array();
  for (const auto& t : transitions(p, u)) {
    ts.push_back({{"label", to_string(t.label)}, {"target", print(t.target)}});
    r.text.push_back(to_string(t.label) + "  ->  " + print(t.target));
  }
  if (ts.empty()) r.text.push_back("no transitions");
  r.payload = {{"universe", names(u)}, {"fresh", designated_fresh(p, u).text}, {"transitions", ts}};
  return r;
}

namespace {

std::set<std::string> canon(const std::vector<Process>& ps) {
  std::set<std::string> out;
  for (const auto& q : ps) out.insert(canonicalize(q).serialization);
  return out;
}

std::vector<std::string> printed(const std::vector<Process>& ps) {
  std::vector<std::string> out;
  for (const auto& q : ps) out.push_back(print(q));
  return out;
}

}  // namespace

Report cmd_harmony(const HarmonyOptions& opts) {
  Report r;
  r.command = "harmony";
  std::vector<std::pair<std::string, Process>> work;
  if (opts.path) {
    std::vector<std::string> files;
    std::error_code ec;
    if (fs::is_directory(*opts.path, ec)) {
      for (const auto& e : fs::directory_iterator(*opts.path))
        if (e.path().extension() == ".fa") files.push_back(e.path().string());
      std::sort(files.begin(), files.end());
    } else {
      files.push_back(*opts.path);
    }
    for (const auto& f : files) {
      SourceFile file;
      if (auto err = load("harmony", f, file)) {
        err->diagnostics.back().message = f + ": " + err->diagnostics.back().message;
        return *err;
      }
      work.emplace_back(f, file.process);
    }
  }
  if (opts.random) {
    Generator g(opts.seed, {.max_size = opts.size});
    for (std::size_t i = 0; i < opts.random; ++i) work.emplace_back("random #" + std::to_string(i), g.next().process);
  }
  if (work.empty()) return failure("harmony", 2, "nothing to check: give a file, a directory or --random N");

  std::size_t reducing = 0;
  for (const auto& [label, p] : work) {
    auto red = reduce(p);
    auto tau = tau_successors(p);
    reducing += !red.empty();
    if (canon(red) != canon(tau)) {
      r.ok = false;
      r.exit_code = 1;
      r.payload = {{"checked", work.size()},
                   {"counterexample",
                    {{"source", label}, {"process", print(p)}, {"reduce", printed(red)}, {"tau", printed(tau)}}}};
      r.text.push_back("mismatch on " + label + ": " + print(p));
      r.text.push_back("  reduce: {" + join(printed(red), ", ") + "}");
      r.text.push_back("  tau:    {" + join(printed(tau), ", ") + "}");
      return r;
    }
  }
  r.payload = {{"checked", work.size()}, {"reducing", reducing}};
  r.text.push_back("harmony holds on " + std::to_string(work.size()) + " processes (" + std::to_string(reducing) +
                   " reduce)");
  return r;
}

}  // namespace cli
