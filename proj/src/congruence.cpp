#include "floatauth/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace floatauth {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct Binder {
  Name name;
  std::optional<SymbolTag> tag;
  std::optional<AuthType> annotation;
};

// Restriction-free static tree: either a prefix leaf, or authorizations
// scoping over a parallel group.
struct SNode {
  std::optional<Process> leaf;
  NameMultiset auths;
  std::vector<SNode> kids;
};

struct Canon {
  Process process;
  std::string ser;
};

Name internal(const std::string& prefix, std::size_t k) { return Name{prefix + std::to_string(k)}; }

bool has_prefix(const Process& p) {
  return visit(overloaded{
                   [](const Nil&) { return false; },
                   [](const Par& n) { return has_prefix(n.left) || has_prefix(n.right); },
                   [](const Res& n) { return has_prefix(n.body); },
                   [](const Auth& n) { return has_prefix(n.body); },
                   [](const auto&) { return true; },
               },
               p);
}

// Free names still present after untyped canonicalization: scopes over
// prefix-free bodies and unused restrictions disappear.
NameSet live_names(const Process& p) {
  auto bind = [](NameSet s, const Name& x) {
    s.erase(x);
    return s;
  };
  auto with = [](NameSet s, std::initializer_list<Name> ns) {
    s.insert(ns.begin(), ns.end());
    return s;
  };
  return visit(overloaded{
                   [](const Nil&) { return NameSet{}; },
                   [](const Par& n) {
                     NameSet s = live_names(n.left);
                     NameSet r = live_names(n.right);
                     s.insert(r.begin(), r.end());
                     return s;
                   },
                   [](const Auth& n) {
                     if (!has_prefix(n.body)) return NameSet{};
                     NameSet s = live_names(n.body);
                     s.insert(n.name);
                     return s;
                   },
                   [&](const Res& n) {
                     NameSet s = live_names(n.body);
                     if (!s.count(n.binder)) return s;
                     s.erase(n.binder);
                     if (n.annotation) {
                       NameSet ns = n.annotation->names();
                       s.insert(ns.begin(), ns.end());
                     }
                     return s;
                   },
                   [&](const Out& n) { return with(live_names(n.cont), {n.subject, n.object}); },
                   [&](const DelegOut& n) { return with(live_names(n.cont), {n.subject, n.object}); },
                   [&](const DelegIn& n) { return with(live_names(n.cont), {n.subject, n.object}); },
                   [&](const In& n) { return with(bind(live_names(n.cont), n.binder), {n.subject}); },
                   [&](const RepIn& n) { return with(bind(live_names(n.cont), n.binder), {n.subject}); },
               },
               p);
}

class Canonicalizer {
 public:
  explicit Canonicalizer(CongruenceMode mode) : mode_(mode) {}

  Canon region(const Process& p, std::size_t depth) {
    std::vector<Binder> binders;
    std::map<Name, Name> ren;
    SNode tree = hoist(p, ren, binders);
    std::optional<SNode> norm = normalize(std::move(tree));
    if (mode_ == CongruenceMode::Untyped) drop_unused(binders, norm);

    const std::size_t k = binders.size();
    if (k == 0) return build(norm, {}, {}, depth);

    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::optional<Canon> best;
    if (k <= kExactBinderOrderLimit) {
      do {
        if (!respects_annotations(binders, order)) continue;
        Canon c = build(norm, binders, order, depth);
        if (!best || c.ser < best->ser) best = std::move(c);
      } while (std::next_permutation(order.begin(), order.end()));
    } else {
      order = heuristic_order(norm, binders, depth);
      best = build(norm, binders, order, depth);
    }
    return *best;
  }

 private:
  SNode hoist(const Process& p, std::map<Name, Name>& ren, std::vector<Binder>& binders) {
    return visit(
        overloaded{
            [&](const Nil&) { return SNode{}; },
            [&](const Par& n) {
              SNode g;
              g.kids.push_back(hoist(n.left, ren, binders));
              g.kids.push_back(hoist(n.right, ren, binders));
              return g;
            },
            [&](const Auth& n) {
              SNode g;
              auto it = ren.find(n.name);
              g.auths.add(it == ren.end() ? n.name : it->second);
              g.kids.push_back(hoist(n.body, ren, binders));
              return g;
            },
            [&](const Res& n) {
              Name t{"$" + std::to_string(temp_++)};
              std::optional<AuthType> ann = n.annotation;
              if (ann)
                for (const auto& [from, to] : ren) ann = ann->rename(from, to);
              binders.push_back({t, n.tag, ann});
              auto saved = ren.find(n.binder);
              std::optional<Name> old;
              if (saved != ren.end()) old = saved->second;
              ren[n.binder] = t;
              SNode body = hoist(n.body, ren, binders);
              if (old)
                ren[n.binder] = *old;
              else
                ren.erase(n.binder);
              return body;
            },
            [&](const auto&) {
              SNode leaf;
              leaf.leaf = rename_free(p, ren);
              return leaf;
            },
        },
        p);
  }

  static std::optional<SNode> normalize(SNode n) {
    if (n.leaf) return n;
    std::vector<SNode> kids;
    for (auto& k : n.kids) {
      std::optional<SNode> nk = normalize(std::move(k));
      if (!nk) continue;
      if (!nk->leaf && nk->auths.empty()) {
        for (auto& g : nk->kids) kids.push_back(std::move(g));
      } else {
        kids.push_back(std::move(*nk));
      }
    }
    if (kids.empty()) return std::nullopt;
    if (kids.size() == 1) {
      SNode& only = kids.front();
      if (n.auths.empty()) return std::move(only);
      if (!only.leaf) {
        only.auths = only.auths + n.auths;
        return std::move(only);
      }
    }
    n.kids = std::move(kids);
    return n;
  }

  static void used_names(const SNode& n, NameSet& out) {
    if (n.leaf) {
      auto fn = live_names(*n.leaf);
      out.insert(fn.begin(), fn.end());
      return;
    }
    for (const auto& [a, c] : n.auths.counts()) out.insert(a);
    for (const auto& k : n.kids) used_names(k, out);
  }

  static void drop_unused(std::vector<Binder>& binders, const std::optional<SNode>& tree) {
    NameSet base;
    if (tree) used_names(*tree, base);
    for (bool changed = true; changed;) {
      changed = false;
      NameSet used = base;
      for (const auto& b : binders)
        if (b.annotation) {
          auto ns = b.annotation->names();
          used.insert(ns.begin(), ns.end());
        }
      for (auto it = binders.begin(); it != binders.end();) {
        if (!used.count(it->name)) {
          it = binders.erase(it);
          changed = true;
        } else {
          ++it;
        }
      }
    }
  }

  // Binder at position i may only mention binders at earlier positions.
  static bool respects_annotations(const std::vector<Binder>& binders,
                                   const std::vector<std::size_t>& order) {
    std::map<Name, std::size_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i) pos[binders[order[i]].name] = i;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const auto& b = binders[order[i]];
      if (!b.annotation) continue;
      for (const auto& n : b.annotation->names()) {
        auto it = pos.find(n);
        if (it != pos.end() && it->second >= i) return false;
      }
    }
    return true;
  }

  std::vector<std::size_t> heuristic_order(const std::optional<SNode>& tree,
                                           const std::vector<Binder>& binders, std::size_t depth) {
    const std::size_t k = binders.size();
    std::vector<std::string> sig(k);
    for (std::size_t i = 0; i < k; ++i) {
      std::map<Name, Name> m;
      for (std::size_t j = 0; j < k; ++j) m[binders[j].name] = Name{j == i ? "%*" : "%?"};
      sig[i] = tree ? static_ser(*tree, m, depth + k) : "0";
      sig[i] += binder_ser(binders[i], m);
    }
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sig[x] < sig[y]; });
    // stable topological repair for annotation dependencies
    std::vector<std::size_t> out;
    std::vector<bool> placed(k, false);
    while (out.size() < k) {
      for (std::size_t idx : order) {
        if (placed[idx]) continue;
        bool ready = true;
        if (binders[idx].annotation)
          for (const auto& n : binders[idx].annotation->names())
            for (std::size_t j = 0; j < k; ++j)
              if (!placed[j] && j != idx && binders[j].name == n) ready = false;
        if (ready) {
          placed[idx] = true;
          out.push_back(idx);
          break;
        }
      }
    }
    return out;
  }

  static std::string binder_ser(const Binder& b, const std::map<Name, Name>& m) {
    std::string s = "[";
    s += b.tag ? to_string(*b.tag) : "-";
    s += ' ';
    if (b.annotation) {
      AuthType t = *b.annotation;
      for (const auto& [from, to] : m) t = t.rename(from, to);
      s += to_string(t);
    } else {
      s += '-';
    }
    return s + "]";
  }

  Canon build(const std::optional<SNode>& tree, const std::vector<Binder>& binders,
              const std::vector<std::size_t>& order, std::size_t depth) {
    const std::size_t k = order.size();
    std::map<Name, Name> m;
    for (std::size_t i = 0; i < k; ++i) m[binders[order[i]].name] = internal("%", depth + i);

    Canon body = tree ? static_canon(*tree, m, depth + k) : Canon{nil(), "0"};
    if (k == 0) return body;

    std::string ser = "(nu";
    Process proc = body.process;
    for (std::size_t i = 0; i < k; ++i) ser += " " + binder_ser(binders[order[i]], m);
    for (std::size_t i = k; i-- > 0;) {
      const Binder& b = binders[order[i]];
      std::optional<AuthType> ann = b.annotation;
      if (ann)
        for (const auto& [from, to] : m) ann = ann->rename(from, to);
      proc = res(internal("%", depth + i), b.tag, ann, proc);
    }
    return {proc, ser + " " + body.ser + ")"};
  }

  std::string static_ser(const SNode& n, const std::map<Name, Name>& m, std::size_t depth) {
    return static_canon(n, m, depth).ser;
  }

  Canon static_canon(const SNode& n, const std::map<Name, Name>& m, std::size_t depth) {
    if (n.leaf) return leaf(rename_free(*n.leaf, m), depth);
    std::vector<Canon> kids;
    for (const auto& k : n.kids) kids.push_back(static_canon(k, m, depth));
    std::sort(kids.begin(), kids.end(), [](const Canon& a, const Canon& b) { return a.ser < b.ser; });

    std::vector<Process> parts;
    std::string inner;
    if (kids.size() == 1) {
      inner = kids.front().ser;
    } else {
      inner = "(|";
      for (const auto& k : kids) inner += " " + k.ser;
      inner += ")";
    }
    for (const auto& k : kids) parts.push_back(k.process);
    Process body = par_all(parts);

    NameMultiset auths;
    for (const auto& [a, c] : n.auths.counts()) {
      auto it = m.find(a);
      auths.add(it == m.end() ? a : it->second, c);
    }
    if (auths.empty()) return {body, inner};
    std::string ser = "(@";
    for (const auto& [a, c] : auths.counts()) ser += " " + a.text + "*" + std::to_string(c);
    return {auth_all(auths, body), ser + " " + inner + ")"};
  }

  Canon leaf(const Process& p, std::size_t depth) {
    auto bind = [&](const Name& x, const Process& cont) {
      Name fresh = internal("%", depth);
      return std::make_pair(fresh, region(rename_free(cont, {{x, fresh}}), depth + 1));
    };
    return visit(
        overloaded{
            [&](const Out& n) {
              Canon c = region(n.cont, depth);
              return Canon{out(n.subject, n.object, c.process),
                           "(o " + n.subject.text + " " + n.object.text + " " + c.ser + ")"};
            },
            [&](const In& n) {
              auto [x, c] = bind(n.binder, n.cont);
              return Canon{in(n.subject, x, c.process),
                           "(i " + n.subject.text + " " + x.text + " " + c.ser + ")"};
            },
            [&](const DelegOut& n) {
              Canon c = region(n.cont, depth);
              return Canon{deleg_out(n.subject, n.object, c.process),
                           "(do " + n.subject.text + " " + n.object.text + " " + c.ser + ")"};
            },
            [&](const DelegIn& n) {
              Canon c = region(n.cont, depth);
              return Canon{deleg_in(n.subject, n.object, c.process),
                           "(di " + n.subject.text + " " + n.object.text + " " + c.ser + ")"};
            },
            [&](const RepIn& n) {
              auto [x, c] = bind(n.binder, n.cont);
              return Canon{rep_in(n.subject, x, c.process),
                           "(r " + n.subject.text + " " + x.text + " " + c.ser + ")"};
            },
            [&](const auto&) -> Canon { return {p, "?"}; },
        },
        p);
  }

  CongruenceMode mode_;
  std::size_t temp_ = 0;
};

// Renames every occurrence, binders included.
Process rename_everywhere(const Process& p, const std::map<Name, Name>& m) {
  auto r = [&](const Name& n) {
    auto it = m.find(n);
    return it == m.end() ? n : it->second;
  };
  return visit(
      overloaded{
          [&](const Nil&) { return p; },
          [&](const Par& n) { return par(rename_everywhere(n.left, m), rename_everywhere(n.right, m)); },
          [&](const Res& n) {
            std::optional<AuthType> ann = n.annotation;
            if (ann)
              for (const auto& [from, to] : m) ann = ann->rename(from, to);
            return res(r(n.binder), n.tag, ann, rename_everywhere(n.body, m));
          },
          [&](const Auth& n) { return auth(r(n.name), rename_everywhere(n.body, m)); },
          [&](const Out& n) { return out(r(n.subject), r(n.object), rename_everywhere(n.cont, m)); },
          [&](const In& n) { return in(r(n.subject), r(n.binder), rename_everywhere(n.cont, m)); },
          [&](const DelegOut& n) {
            return deleg_out(r(n.subject), r(n.object), rename_everywhere(n.cont, m));
          },
          [&](const DelegIn& n) {
            return deleg_in(r(n.subject), r(n.object), rename_everywhere(n.cont, m));
          },
          [&](const RepIn& n) {
            return rep_in(r(n.subject), r(n.binder), rename_everywhere(n.cont, m));
          },
      },
      p);
}

bool collides(const std::string& prefix, const NameSet& names) {
  for (const auto& n : names) {
    if (n.text.size() <= prefix.size() || n.text.compare(0, prefix.size(), prefix) != 0) continue;
    if (std::all_of(n.text.begin() + prefix.size(), n.text.end(),
                    [](char c) { return c >= '0' && c <= '9'; }))
      return true;
  }
  return false;
}

}  // namespace

CanonicalForm canonicalize(const Process& p, CongruenceMode mode) {
  Canonicalizer c(mode);
  Canon r = c.region(p, 1);

  NameSet fn = free_names(p);
  std::string prefix = "v";
  while (collides(prefix, fn)) prefix += "v";
  std::map<Name, Name> display;
  for (const auto& n : all_names(r.process))
    if (!n.text.empty() && n.text[0] == '%') display[n] = Name{prefix + n.text.substr(1)};
  return {rename_everywhere(r.process, display), r.ser};
}

bool congruent(const Process& p, const Process& q, CongruenceMode mode) {
  return canonicalize(p, mode).serialization == canonicalize(q, mode).serialization;
}

}  // namespace floatauth
