#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "floatauth/name.hpp"
#include "floatauth/types.hpp"

namespace floatauth {

namespace detail {
struct Node;
}

/// Immutable process term. Copies share structure; safe to share across threads.
class Process {
 public:
  /// The inactive process.
  Process();

  const detail::Node& node() const { return *node_; }
  template <class T>
  const T* as() const;
  template <class T>
  bool is() const { return as<T>() != nullptr; }

  /// Number of AST nodes.
  std::size_t size() const;

  bool operator==(const Process& other) const;
  bool operator!=(const Process& other) const { return !(*this == other); }
  bool same_node(const Process& other) const { return node_ == other.node_; }

 private:
  explicit Process(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
  template <class T>
  friend Process make_process(T node);

  std::shared_ptr<const detail::Node> node_;
};

struct Nil {};
struct Par {
  Process left, right;
};
struct Res {
  Name binder;
  std::optional<SymbolTag> tag;
  std::optional<AuthType> annotation;
  Process body;
};
struct Auth {
  Name name;
  Process body;
};
struct Out {
  Name subject, object;
  Process cont;
};
struct In {
  Name subject, binder;
  Process cont;
};
/// a<b>.P: delegates one authorization for `object` along `subject`.
struct DelegOut {
  Name subject, object;
  Process cont;
};
/// a(b).P: receives one authorization for `object` along `subject`.
struct DelegIn {
  Name subject, object;
  Process cont;
};
struct RepIn {
  Name subject, binder;
  Process cont;
};

namespace detail {
struct Node : std::variant<Nil, Par, Res, Auth, Out, In, DelegOut, DelegIn, RepIn> {
  using variant::variant;
};
}  // namespace detail

template <class T>
const T* Process::as() const {
  return std::get_if<T>(static_cast<const detail::Node::variant*>(node_.get()));
}

template <class Visitor>
decltype(auto) visit(Visitor&& v, const Process& p) {
  return std::visit(std::forward<Visitor>(v),
                    static_cast<const detail::Node::variant&>(p.node()));
}

template <class T>
Process make_process(T node) {
  return Process(std::make_shared<const detail::Node>(std::move(node)));
}

Process nil();
Process par(Process left, Process right);
Process par_all(const std::vector<Process>& parts);  // left-associated; nil when empty
Process res(Name binder, Process body);
Process res(Name binder, std::optional<SymbolTag> tag, std::optional<AuthType> annotation,
            Process body);
Process auth(Name name, Process body);
Process auth_all(const NameMultiset& names, Process body);
Process out(Name subject, Name object, Process cont);
Process in(Name subject, Name binder, Process cont);
Process deleg_out(Name subject, Name object, Process cont);
Process deleg_in(Name subject, Name object, Process cont);
Process rep_in(Name subject, Name binder, Process cont);

/// A restriction binder together with its decorations, detached from its body.
struct Binding {
  Name binder;
  std::optional<SymbolTag> tag;
  std::optional<AuthType> annotation;
};

/// (nu b1)(nu b2)...body, first binding outermost.
Process wrap(const std::vector<Binding>& bindings, Process body);

/// fn(P). Names mentioned by restriction annotations count as free occurrences.
NameSet free_names(const Process& p);
/// Names bound by restrictions and inputs.
NameSet bound_names(const Process& p);
/// Every name occurring anywhere, free or bound.
NameSet all_names(const Process& p);
/// Symbols of S tagging restrictions; nu excluded.
SymbolSet symbols(const Process& p);

/// Capture-avoiding P{replacement/placeholder}. Binders that would capture
/// `replacement` are renamed with the smallest numeric suffix that does not
/// clash with any name of `p` or `replacement`.
Process substitute(const Process& p, const Name& replacement, const Name& placeholder);

/// Renames every occurrence of free names according to `mapping`, simultaneously.
/// Caller guarantees no capture (targets not bound in p).
Process rename_free(const Process& p, const std::map<Name, Name>& mapping);

struct WellFormedness {
  enum class Violation { None, DuplicateSymbol, SymbolUnderReplication };
  Violation violation = Violation::None;
  Symbol symbol;
  std::string where;

  bool ok() const { return violation == Violation::None; }
  std::string message() const;
};

/// No symbol of S occurs twice and replicated inputs contain no symbols.
WellFormedness well_formed(const Process& p);

}  // namespace floatauth
