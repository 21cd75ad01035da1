#pragma once

#include <optional>
#include <string>
#include <vector>

#include "floatauth/process.hpp"

namespace floatauth {

/// Steps from a node to one of its children: 0 is the left branch of a
/// parallel composition or the body of an authorization scope, 1 the right branch.
using Path = std::vector<int>;

/// Subterm reached by following `path`. Throws std::invalid_argument if the
/// path leaves the tree or crosses anything but Par/Auth nodes.
Process subterm(const Process& root, const Path& path);
Process replace_at(const Process& root, const Path& path, const Process& replacement);

struct OneHoleContext {
  Process root;
  Path hole;
};

/// C[.1,.2]: root is restriction-free along both paths.
struct RedexSites {
  Process root;
  Path site1, site2;
};

/// Removes, for each requested occurrence, the nearest enclosing authorization
/// on the way from the hole to the root. nullopt when some request cannot be met.
std::optional<OneHoleContext> drift1(const OneHoleContext& ctx, const NameMultiset& remove);
std::optional<RedexSites> drift2(const RedexSites& ctx, const NameMultiset& remove1,
                                 const NameMultiset& remove2);
/// Authorizations drift2 fails to discharge; empty iff drift2 is defined.
NameMultiset drift2_deficit(const RedexSites& ctx, const NameMultiset& remove1,
                            const NameMultiset& remove2);

std::string print_context(const OneHoleContext& ctx);   // hole shown as `_`
std::string print_context(const RedexSites& ctx);       // holes shown as `_1`, `_2`

/// Restrictions of the outermost static region hoisted to the top, binders
/// renamed apart from each other and from the free names.
struct Prepared {
  std::vector<Binding> binders;
  Process skeleton;
};
Prepared prepare(const Process& p);

enum class RedexKind { Comm, Deleg };

struct Redex {
  RedexKind kind;
  Name subject, object;
  RedexSites sites;           // on the skeleton, with the used replicated input unfolded once
  bool replicated = false;    // the receiver is a copy of a replicated input
};

struct Enumeration {
  Prepared prepared;
  std::vector<Redex> redexes;
};

/// All pairs of complementary active prefixes, in skeleton order.
Enumeration enumerate_redexes(const Process& p);

/// Authorization lists drift must discharge for the redex: ({a},{a}) or ({a,b},{a}).
std::pair<NameMultiset, NameMultiset> required_authorizations(const Redex& r);

struct Step {
  Redex redex;
  std::optional<Process> result;  // nullopt when drift is undefined
  NameMultiset missing;
};

/// One entry per enumerated redex, same order as enumerate_redexes.
std::vector<Step> steps(const Process& p);

/// Reducts of p, deduplicated up to structural congruence.
std::vector<Process> reduce(const Process& p);

struct ErrorWitness {
  Redex redex;
  NameMultiset missing;
  std::string context;  // the two-hole context, printed
};

/// Empty when p is not an error.
std::vector<ErrorWitness> error_witnesses(const Process& p);
bool is_error(const Process& p);

std::string to_string(RedexKind k);

}  // namespace floatauth
