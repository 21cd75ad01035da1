#pragma once

#include <memory>
#include <ostream>
#include <set>
#include <string>
#include <variant>

#include "floatauth/name.hpp"

namespace floatauth {

using OmegaElem = std::variant<Name, Symbol>;

/// Replacement set of a channel type: either a set of names and symbols, or nu.
class OmegaSet {
 public:
  static OmegaSet nu() { return OmegaSet(true, {}); }
  static OmegaSet of(std::set<OmegaElem> elems) { return OmegaSet(false, std::move(elems)); }
  static OmegaSet of_names(const NameSet& names);

  bool is_nu() const { return nu_; }
  const std::set<OmegaElem>& elements() const { return elems_; }
  bool contains(const OmegaElem& e) const { return !nu_ && elems_.count(e) > 0; }
  /// True for a (possibly empty) set made of names only.
  bool symbol_free() const;
  /// The names of a symbol-free set. Meaningless for nu.
  NameSet name_elements() const;
  SymbolSet symbol_elements() const;

  /// Inclusion: nu is included only in nu; sets compare by set inclusion.
  bool included_in(const OmegaSet& other) const;

  OmegaSet rename(const Name& from, const Name& to) const;
  OmegaSet replace_symbol(const Symbol& from, const Name& to) const;

  auto operator<=>(const OmegaSet&) const = default;

 private:
  OmegaSet(bool nu, std::set<OmegaElem> elems) : nu_(nu), elems_(std::move(elems)) {}

  bool nu_ = false;
  std::set<OmegaElem> elems_;
};

/// T ::= omega(T) | ground. Equality is syntactic.
class AuthType {
 public:
  AuthType() = default;  // ground
  static AuthType ground() { return AuthType(); }
  static AuthType chan(OmegaSet omega, AuthType carried);

  bool is_ground() const { return !chan_; }
  const OmegaSet& omega() const;
  const AuthType& carried() const;

  NameSet names() const;
  SymbolSet symbols() const;
  AuthType rename(const Name& from, const Name& to) const;
  AuthType replace_symbol(const Symbol& from, const Name& to) const;

  bool operator==(const AuthType& other) const;
  bool operator!=(const AuthType& other) const { return !(*this == other); }

 private:
  struct Chan;
  std::shared_ptr<const Chan> chan_;
};

struct AuthType::Chan {
  OmegaSet omega;
  AuthType carried;
};

inline const OmegaSet& AuthType::omega() const { return chan_->omega; }
inline const AuthType& AuthType::carried() const { return chan_->carried; }

std::string to_string(const OmegaElem& e);
std::string to_string(const OmegaSet& w);
std::string to_string(const AuthType& t);
std::string to_string(const SymbolTag& tag);
inline std::ostream& operator<<(std::ostream& os, const AuthType& t) { return os << to_string(t); }

}  // namespace floatauth
