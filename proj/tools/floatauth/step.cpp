#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "floatauth/reduction.hpp"
#include "floatauth/syntax.hpp"

namespace cli {

using namespace floatauth;

namespace {

struct Session {
  bool interactive;
  bool quiet;  // json mode: the report is the only stdout output
  std::ofstream transcript;

  void say(const std::string& line) {
    if (!quiet) std::cout << line << "\n";
    if (transcript) transcript << line << "\n";
  }
};

std::string pair_text(const std::pair<NameMultiset, NameMultiset>& need) {
  return to_string(need.first) + " and " + to_string(need.second);
}

}  // namespace

Report cmd_step(const std::string& path, const StepOptions& opts, bool json_mode) {
  Report r;
  r.command = "step";
  SourceFile file;
  try {
    file = parse(read_input(path));
  } catch (const ParseError& e) {
    r.ok = false;
    r.exit_code = 2;
    r.diagnostics.push_back({"error", e.message(), e.line(), e.column()});
    return r;
  } catch (const std::exception& e) {
    r.ok = false;
    r.exit_code = 2;
    r.diagnostics.push_back({"error", e.what()});
    return r;
  }
  if (path == "-") {
    r.ok = false;
    r.exit_code = 2;
    r.diagnostics.push_back({"error", "step reads its choices from stdin; give the process as a file"});
    return r;
  }

  Session s{isatty(fileno(stdin)) != 0, json_mode, {}};
  if (opts.transcript) {
    s.transcript.open(*opts.transcript);
    if (!s.transcript) {
      r.ok = false;
      r.exit_code = 2;
      r.diagnostics.push_back({"error", "cannot write " + *opts.transcript});
      return r;
    }
  }

  std::vector<Process> history{file.process};
  json choices = json::array();
  for (;;) {
    const Process& cur = history.back();
    s.say("state " + std::to_string(history.size() - 1) + ": " + print(cur));
    std::vector<Step> enabled;
    for (auto& st : steps(cur)) {
      if (st.result) {
        enabled.push_back(st);
        s.say("  " + std::to_string(enabled.size()) + ") " + to_string(st.redex.kind) + " on " +
              st.redex.subject.text + " in " + print_context(st.redex.sites) + ", consumes " +
              pair_text(required_authorizations(st.redex)));
      } else {
        s.say("  error: " + to_string(st.redex.kind) + " on " + st.redex.subject.text + " in " +
              print_context(st.redex.sites) + " lacks " + to_string(st.missing));
      }
    }
    if (enabled.empty()) s.say("  no enabled redex");

    std::string line;
    if (s.interactive && !s.quiet) std::cout << "choose 1-" << enabled.size() << ", u to undo, q to quit> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    auto first = line.find_first_not_of(" \t");
    line = first == std::string::npos ? "" : line.substr(first, line.find_last_not_of(" \t") - first + 1);
    // scripted choices are echoed so the output reads like a session
    if (!s.interactive) s.say("> " + line);
    else if (s.transcript) s.transcript << "> " << line << "\n";
    if (line.empty()) continue;
    choices.push_back(line);
    if (line == "q") break;
    if (line == "u") {
      if (history.size() > 1) history.pop_back();
      else s.say("  nothing to undo");
      continue;
    }
    if (line == "h" || line == "?") {
      s.say("  a number applies that redex, u undoes the last step, q quits");
      continue;
    }
    char* end = nullptr;
    unsigned long k = std::strtoul(line.c_str(), &end, 10);
    if (*end != '\0' || k == 0 || k > enabled.size()) {
      s.say("  no redex '" + line + "'");
      continue;
    }
    history.push_back(*enabled[k - 1].result);
  }

  json states = json::array();
  for (const auto& p : history) states.push_back(print(p));
  r.payload = {{"choices", choices}, {"path", states}};
  if (!json_mode) r.text.push_back("-- " + std::to_string(history.size() - 1) + " steps taken");
  return r;
}

}  // namespace cli
