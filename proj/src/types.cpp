#include "floatauth/types.hpp"

#include <algorithm>
#include <vector>

namespace floatauth {

OmegaSet OmegaSet::of_names(const NameSet& names) {
  std::set<OmegaElem> elems(names.begin(), names.end());
  return of(std::move(elems));
}

bool OmegaSet::symbol_free() const {
  return !nu_ && std::all_of(elems_.begin(), elems_.end(),
                             [](const OmegaElem& e) { return std::holds_alternative<Name>(e); });
}

NameSet OmegaSet::name_elements() const {
  NameSet out;
  for (const auto& e : elems_)
    if (const auto* n = std::get_if<Name>(&e)) out.insert(*n);
  return out;
}

SymbolSet OmegaSet::symbol_elements() const {
  SymbolSet out;
  for (const auto& e : elems_)
    if (const auto* s = std::get_if<Symbol>(&e)) out.insert(*s);
  return out;
}

bool OmegaSet::included_in(const OmegaSet& other) const {
  if (nu_ || other.nu_) return nu_ && other.nu_;
  return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
}

OmegaSet OmegaSet::rename(const Name& from, const Name& to) const {
  if (nu_ || !elems_.count(from)) return *this;
  auto elems = elems_;
  elems.erase(from);
  elems.insert(to);
  return of(std::move(elems));
}

OmegaSet OmegaSet::replace_symbol(const Symbol& from, const Name& to) const {
  if (nu_ || !elems_.count(from)) return *this;
  auto elems = elems_;
  elems.erase(from);
  elems.insert(to);
  return of(std::move(elems));
}

AuthType AuthType::chan(OmegaSet omega, AuthType carried) {
  AuthType t;
  t.chan_ = std::make_shared<const Chan>(Chan{std::move(omega), std::move(carried)});
  return t;
}

NameSet AuthType::names() const {
  NameSet out;
  for (const AuthType* t = this; !t->is_ground(); t = &t->carried()) {
    auto ns = t->omega().name_elements();
    out.insert(ns.begin(), ns.end());
  }
  return out;
}

SymbolSet AuthType::symbols() const {
  SymbolSet out;
  for (const AuthType* t = this; !t->is_ground(); t = &t->carried()) {
    auto ss = t->omega().symbol_elements();
    out.insert(ss.begin(), ss.end());
  }
  return out;
}

AuthType AuthType::rename(const Name& from, const Name& to) const {
  if (is_ground()) return *this;
  return chan(omega().rename(from, to), carried().rename(from, to));
}

AuthType AuthType::replace_symbol(const Symbol& from, const Name& to) const {
  if (is_ground()) return *this;
  return chan(omega().replace_symbol(from, to), carried().replace_symbol(from, to));
}

bool AuthType::operator==(const AuthType& other) const {
  if (chan_ == other.chan_) return true;
  if (is_ground() || other.is_ground()) return false;
  return omega() == other.omega() && carried() == other.carried();
}

std::string to_string(const OmegaElem& e) {
  if (const auto* n = std::get_if<Name>(&e)) return n->text;
  return "#" + std::get<Symbol>(e).id;
}

std::string to_string(const OmegaSet& w) {
  if (w.is_nu()) return "~";
  std::vector<std::string> parts;
  for (const auto& e : w.elements()) parts.push_back(to_string(e));
  std::sort(parts.begin(), parts.end());
  std::string out = "{";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out + "}";
}

std::string to_string(const AuthType& t) {
  if (t.is_ground()) return "0";
  return to_string(t.omega()) + "(" + to_string(t.carried()) + ")";
}

std::string to_string(const SymbolTag& tag) {
  if (const auto* s = std::get_if<Symbol>(&tag)) return "#" + s->id;
  return "~";
}

}  // namespace floatauth
