#pragma once

// Contexts written as ordinary source text, with the holes marked by the
// prefixes h!h.0 (first hole) and k!k.0 (second hole).

#include <stdexcept>
#include <string>

#include "floatauth/reduction.hpp"
#include "floatauth/syntax.hpp"

namespace fixtures {

inline floatauth::Process hole1() {
  return floatauth::out(floatauth::Name{"h"}, floatauth::Name{"h"}, floatauth::nil());
}
inline floatauth::Process hole2() {
  return floatauth::out(floatauth::Name{"k"}, floatauth::Name{"k"}, floatauth::nil());
}

inline bool find_path(const floatauth::Process& root, const floatauth::Process& target, floatauth::Path& path) {
  using namespace floatauth;
  if (root == target) return true;
  if (const Par* p = root.as<Par>()) {
    path.push_back(0);
    if (find_path(p->left, target, path)) return true;
    path.back() = 1;
    if (find_path(p->right, target, path)) return true;
    path.pop_back();
  } else if (const Auth* a = root.as<Auth>()) {
    path.push_back(0);
    if (find_path(a->body, target, path)) return true;
    path.pop_back();
  }
  return false;
}

inline floatauth::Path path_to(const floatauth::Process& root, const floatauth::Process& target) {
  floatauth::Path p;
  if (!find_path(root, target, p)) throw std::invalid_argument("hole marker not found");
  return p;
}

inline floatauth::OneHoleContext ctx1(const std::string& src) {
  auto p = floatauth::parse_process(src);
  return {p, path_to(p, hole1())};
}

inline floatauth::RedexSites ctx2(const std::string& src) {
  auto p = floatauth::parse_process(src);
  return {p, path_to(p, hole1()), path_to(p, hole2())};
}

inline floatauth::NameMultiset ms(std::initializer_list<const char*> xs) {
  floatauth::NameMultiset m;
  for (auto x : xs) m.add(floatauth::Name{x});
  return m;
}

}  // namespace fixtures
