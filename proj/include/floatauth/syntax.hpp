#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "floatauth/process.hpp"
#include "floatauth/types.hpp"

namespace floatauth {

struct Assumption {
  Name name;
  AuthType type;
};

/// A parsed input file: `assume` declarations followed by one process.
struct SourceFile {
  std::vector<Assumption> assumptions;
  Process process;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        message_(message),
        line_(line),
        column_(column) {}

  const std::string& message() const { return message_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string message_;
  int line_, column_;
};

/// Parses a whole file. Throws ParseError.
SourceFile parse(const std::string& text);
/// Parses text that must contain a process and no assumptions.
Process parse_process(const std::string& text);
AuthType parse_type(const std::string& text);

std::string print(const Process& p);
std::string print(const SourceFile& file);

/// Prints `p`, emitting the given text in place of particular subterms
/// (matched by node identity). Used to render contexts with holes.
std::string print_with_holes(const Process& p, const std::map<const void*, std::string>& holes);

/// `new` and `assume` are keywords and cannot be used as names.
bool is_keyword(const std::string& text);

}  // namespace floatauth
