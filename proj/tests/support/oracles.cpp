#include "oracles.hpp"

#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "floatauth/syntax.hpp"

namespace oracle {

using namespace floatauth;

namespace {

Path cons(int step, const Path& rest) {
  Path p{step};
  p.insert(p.end(), rest.begin(), rest.end());
  return p;
}

Path tail(const Path& p) { return Path(p.begin() + 1, p.end()); }

struct One {
  Process tree;
  Path hole;
};

// Drift rules, read from conclusion to premise. `d` holds the names already removed.
std::vector<One> d1(const Process& c, const Path& hole, const NameMultiset& a, const NameMultiset& d) {
  std::vector<One> out;
  if (hole.empty()) {
    if (a.empty()) out.push_back({c, {}});  // (c-end)
    return out;
  }
  if (const Auth* s = c.as<Auth>()) {
    if (hole[0] != 0) return out;
    if (a.contains(s->name)) {  // (c-rem)
      NameMultiset d2 = d;
      d2.add(s->name);
      for (auto& r : d1(s->body, tail(hole), a.without_one(s->name), d2)) out.push_back(r);
    }
    if (!d.contains(s->name)) {  // (c-skip)
      for (auto& r : d1(s->body, tail(hole), a, d)) out.push_back({auth(s->name, r.tree), cons(0, r.hole)});
    }
    return out;
  }
  if (const Par* p = c.as<Par>()) {  // (c-par) and its mirror
    if (hole[0] == 0)
      for (auto& r : d1(p->left, tail(hole), a, d)) out.push_back({par(r.tree, p->right), cons(0, r.hole)});
    else
      for (auto& r : d1(p->right, tail(hole), a, d)) out.push_back({par(p->left, r.tree), cons(1, r.hole)});
  }
  return out;
}

struct Two {
  Process tree;
  Path h1, h2;
};

// Two-hole drift, same reading.
std::vector<Two> d2(const Process& c, const Path& h1, const Path& h2, const NameMultiset& a, const NameMultiset& b,
                    const NameMultiset& d, const NameMultiset& e) {
  std::vector<Two> out;
  if (h1.empty() || h2.empty()) return out;
  if (const Par* p = c.as<Par>()) {
    if (h1[0] != h2[0]) {  // (c2-spl)
      const Process& c1 = h1[0] == 0 ? p->left : p->right;
      const Process& c2 = h2[0] == 0 ? p->left : p->right;
      for (auto& r1 : d1(c1, tail(h1), a, d))
        for (auto& r2 : d1(c2, tail(h2), b, e)) {
          Process t = h1[0] == 0 ? par(r1.tree, r2.tree) : par(r2.tree, r1.tree);
          out.push_back({t, cons(h1[0], r1.hole), cons(h2[0], r2.hole)});
        }
      return out;
    }
    // (c2-par) and its mirror
    const Process& inner = h1[0] == 0 ? p->left : p->right;
    for (auto& r : d2(inner, tail(h1), tail(h2), a, b, d, e)) {
      Process t = h1[0] == 0 ? par(r.tree, p->right) : par(p->left, r.tree);
      out.push_back({t, cons(h1[0], r.h1), cons(h1[0], r.h2)});
    }
    return out;
  }
  if (const Auth* s = c.as<Auth>()) {
    const Name& n = s->name;
    if (a.contains(n)) {  // (c2-rem-l)
      NameMultiset dd = d;
      dd.add(n);
      for (auto& r : d2(s->body, tail(h1), tail(h2), a.without_one(n), b, dd, e)) out.push_back(r);
    }
    if (b.contains(n)) {  // (c2-rem-r)
      NameMultiset ee = e;
      ee.add(n);
      for (auto& r : d2(s->body, tail(h1), tail(h2), a, b.without_one(n), d, ee)) out.push_back(r);
    }
    if (!d.contains(n) && !e.contains(n)) {  // (c2-skip)
      for (auto& r : d2(s->body, tail(h1), tail(h2), a, b, d, e))
        out.push_back({auth(n, r.tree), cons(0, r.h1), cons(0, r.h2)});
    }
  }
  return out;
}

std::string path_key(const Path& p) {
  std::string s;
  for (int x : p) s += static_cast<char>('0' + x);
  return s;
}

// Structural rendering that keeps every node, unlike a pretty printer.
void render(const Process& p, std::string& out) {
  visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Nil>) {
          out += "0";
        } else if constexpr (std::is_same_v<T, Par>) {
          out += "(|";
          render(n.left, out);
          out += " ";
          render(n.right, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, Res>) {
          out += "(nu " + n.binder.text;
          if (n.tag) out += " " + to_string(*n.tag);
          if (n.annotation) out += " " + to_string(*n.annotation);
          out += " ";
          render(n.body, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, Auth>) {
          out += "(@" + n.name.text + " ";
          render(n.body, out);
          out += ")";
        } else {
          const char* tag = std::is_same_v<T, Out>        ? "o"
                            : std::is_same_v<T, In>       ? "i"
                            : std::is_same_v<T, DelegOut> ? "do"
                            : std::is_same_v<T, DelegIn>  ? "di"
                                                          : "r";
          out += std::string("(") + tag + " " + n.subject.text + " ";
          if constexpr (std::is_same_v<T, In> || std::is_same_v<T, RepIn>)
            out += n.binder.text;
          else
            out += n.object.text;
          out += " ";
          render(n.cont, out);
          out += ")";
        }
      },
      p);
}

std::string key_of(const Process& p) {
  std::string s;
  render(p, s);
  return s;
}

}  // namespace

std::string DriftOut::key() const {
  std::string s = key_of(root);
  for (const auto& h : holes) s += "@" + path_key(h);
  return s;
}

std::set<DriftOut> drift1_all(const Process& root, const Path& hole, const NameMultiset& remove) {
  std::set<DriftOut> out;
  for (auto& r : d1(root, hole, remove, {})) out.insert({r.tree, {r.hole}});
  return out;
}

std::set<DriftOut> drift2_all(const Process& root, const Path& h1, const Path& h2, const NameMultiset& r1,
                              const NameMultiset& r2) {
  std::set<DriftOut> out;
  for (auto& r : d2(root, h1, h2, r1, r2, {}, {})) out.insert({r.tree, {r.h1, r.h2}});
  return out;
}

// ---------------------------------------------------------------------------
// Congruence by rewriting

namespace {

Name mapped(const std::map<Name, Name>& env, const Name& n) {
  auto it = env.find(n);
  return it == env.end() ? n : it->second;
}

AuthType map_type(const std::map<Name, Name>& env, const AuthType& t) {
  if (t.is_ground()) return t;
  OmegaSet w = t.omega();
  if (!w.is_nu()) {
    std::set<OmegaElem> elems;
    for (const auto& e : w.elements()) {
      if (const Name* n = std::get_if<Name>(&e))
        elems.insert(mapped(env, *n));
      else
        elems.insert(e);
    }
    w = OmegaSet::of(std::move(elems));
  }
  return AuthType::chan(w, map_type(env, t.carried()));
}

struct Normalizer {
  std::string prefix;
  int next = 0;

  Name fresh() { return Name{prefix + std::to_string(next++)}; }

  Process run(const Process& p, const std::map<Name, Name>& env) {
    return visit(
        [&](const auto& n) -> Process {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Nil>) {
            return nil();
          } else if constexpr (std::is_same_v<T, Par>) {
            Process l = run(n.left, env);
            return par(l, run(n.right, env));
          } else if constexpr (std::is_same_v<T, Res>) {
            std::optional<AuthType> ann;
            if (n.annotation) ann = map_type(env, *n.annotation);
            auto inner = env;
            Name b = fresh();
            inner[n.binder] = b;
            return res(b, n.tag, ann, run(n.body, inner));
          } else if constexpr (std::is_same_v<T, Auth>) {
            return auth(mapped(env, n.name), run(n.body, env));
          } else if constexpr (std::is_same_v<T, Out>) {
            return out(mapped(env, n.subject), mapped(env, n.object), run(n.cont, env));
          } else if constexpr (std::is_same_v<T, DelegOut>) {
            return deleg_out(mapped(env, n.subject), mapped(env, n.object), run(n.cont, env));
          } else if constexpr (std::is_same_v<T, DelegIn>) {
            return deleg_in(mapped(env, n.subject), mapped(env, n.object), run(n.cont, env));
          } else {
            auto inner = env;
            Name b = fresh();
            inner[n.binder] = b;
            Process body = run(n.cont, inner);
            if constexpr (std::is_same_v<T, In>)
              return in(mapped(env, n.subject), b, body);
            else
              return rep_in(mapped(env, n.subject), b, body);
          }
        },
        p);
  }
};

bool annotation_mentions(const std::optional<AuthType>& t, const Name& n) { return t && t->names().count(n); }

struct Rewriter {
  CongruenceMode mode;
  std::size_t max_size;
  const NameSet& pool;

  // Rewrites at the root of p; `budget` is how many nodes may be added.
  void root(const Process& p, std::size_t budget, std::vector<Process>& out) const {
    if (budget >= 2) out.push_back(par(p, nil()));  // (sc-par-inact), right to left
    if (p.is<Nil>()) {
      if (budget >= 1) {
        for (const auto& a : pool) out.push_back(auth(a, nil()));  // (sc-auth-inact), right to left
        if (mode == CongruenceMode::Untyped) out.push_back(res(Name{"%new"}, nil()));  // (sc-res-inact)
      }
      return;
    }
    if (const Par* q = p.as<Par>()) {
      if (q->right.is<Nil>()) out.push_back(q->left);  // (sc-par-inact)
      out.push_back(par(q->right, q->left));            // (sc-par-comm)
      if (const Par* l = q->left.as<Par>())             // (sc-par-assoc)
        out.push_back(par(l->left, par(l->right, q->right)));
      if (const Par* r = q->right.as<Par>()) out.push_back(par(par(q->left, r->left), r->right));
      if (const Res* r = q->right.as<Res>(); r && !free_names(q->left).count(r->binder))  // (sc-res-extr)
        out.push_back(res(r->binder, r->tag, r->annotation, par(q->left, r->body)));
      return;
    }
    if (const Res* r = p.as<Res>()) {
      if (r->body.is<Nil>() && mode == CongruenceMode::Untyped) out.push_back(nil());  // (sc-res-inact)
      if (const Res* s = r->body.as<Res>();                                            // (sc-res-swap)
          s && !annotation_mentions(s->annotation, r->binder) && !annotation_mentions(r->annotation, s->binder))
        out.push_back(res(s->binder, s->tag, s->annotation, res(r->binder, r->tag, r->annotation, s->body)));
      if (const Par* q = r->body.as<Par>(); q && !free_names(q->left).count(r->binder))  // (sc-res-extr)
        out.push_back(par(q->left, res(r->binder, r->tag, r->annotation, q->right)));
      if (const Auth* a = r->body.as<Auth>(); a && a->name != r->binder)  // (sc-scope-auth)
        out.push_back(auth(a->name, res(r->binder, r->tag, r->annotation, a->body)));
      return;
    }
    if (const Auth* a = p.as<Auth>()) {
      if (a->body.is<Nil>()) out.push_back(nil());  // (sc-auth-inact)
      if (const Auth* b = a->body.as<Auth>()) out.push_back(auth(b->name, auth(a->name, b->body)));  // (sc-auth-swap)
      if (const Res* r = a->body.as<Res>(); r && r->binder != a->name)  // (sc-scope-auth)
        out.push_back(res(r->binder, r->tag, r->annotation, auth(a->name, r->body)));
    }
  }

  void everywhere(const Process& p, std::size_t budget, std::vector<Process>& acc) const {
    root(p, budget, acc);
    visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          std::vector<Process> sub;
          if constexpr (std::is_same_v<T, Par>) {
            everywhere(n.left, budget, sub);
            for (auto& s : sub) acc.push_back(par(s, n.right));
            sub.clear();
            everywhere(n.right, budget, sub);
            for (auto& s : sub) acc.push_back(par(n.left, s));
          } else if constexpr (std::is_same_v<T, Res>) {
            everywhere(n.body, budget, sub);
            for (auto& s : sub) acc.push_back(res(n.binder, n.tag, n.annotation, s));
          } else if constexpr (std::is_same_v<T, Auth>) {
            everywhere(n.body, budget, sub);
            for (auto& s : sub) acc.push_back(auth(n.name, s));
          } else if constexpr (std::is_same_v<T, Out>) {
            everywhere(n.cont, budget, sub);
            for (auto& s : sub) acc.push_back(out(n.subject, n.object, s));
          } else if constexpr (std::is_same_v<T, In>) {
            everywhere(n.cont, budget, sub);
            for (auto& s : sub) acc.push_back(in(n.subject, n.binder, s));
          } else if constexpr (std::is_same_v<T, DelegOut>) {
            everywhere(n.cont, budget, sub);
            for (auto& s : sub) acc.push_back(deleg_out(n.subject, n.object, s));
          } else if constexpr (std::is_same_v<T, DelegIn>) {
            everywhere(n.cont, budget, sub);
            for (auto& s : sub) acc.push_back(deleg_in(n.subject, n.object, s));
          } else if constexpr (std::is_same_v<T, RepIn>) {
            everywhere(n.cont, budget, sub);
            for (auto& s : sub) acc.push_back(rep_in(n.subject, n.binder, s));
          }
        },
        p);
  }

};

// Every prefix with its kind and its free names; bound names show as `*`.
// None of the axioms adds, drops or captures a prefix, so differing
// signatures separate two terms without searching.
void prefix_signature(const Process& p, const NameSet& bound, std::multiset<std::string>& out) {
  auto show = [&](const Name& n) { return bound.count(n) ? std::string("*") : n.text; };
  visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Par>) {
          prefix_signature(n.left, bound, out);
          prefix_signature(n.right, bound, out);
        } else if constexpr (std::is_same_v<T, Res>) {
          NameSet inner = bound;
          inner.insert(n.binder);
          prefix_signature(n.body, inner, out);
        } else if constexpr (std::is_same_v<T, Auth>) {
          prefix_signature(n.body, bound, out);
        } else if constexpr (std::is_same_v<T, Out> || std::is_same_v<T, DelegOut> || std::is_same_v<T, DelegIn>) {
          const char* kind = std::is_same_v<T, Out> ? "out " : std::is_same_v<T, DelegOut> ? "dout " : "din ";
          out.insert(kind + show(n.subject) + " " + show(n.object));
          prefix_signature(n.cont, bound, out);
        } else if constexpr (std::is_same_v<T, In> || std::is_same_v<T, RepIn>) {
          out.insert((std::is_same_v<T, In> ? "in " : "rep ") + show(n.subject));
          NameSet inner = bound;
          inner.insert(n.binder);
          prefix_signature(n.cont, inner, out);
        }
      },
      p);
}

std::multiset<std::string> prefix_signature(const Process& p) {
  std::multiset<std::string> out;
  prefix_signature(p, {}, out);
  return out;
}

}  // namespace

Process alpha_normal(const Process& p, const std::string& prefix) { return Normalizer{prefix}.run(p, {}); }

std::vector<Process> rewrites(const Process& p, CongruenceMode mode, std::size_t max_size, const NameSet& pool) {
  Rewriter rw{mode, max_size, pool};
  std::size_t size = p.size();
  std::vector<Process> raw;
  rw.everywhere(p, size >= max_size ? 0 : max_size - size, raw);
  std::vector<Process> out;
  for (auto& q : raw)
    if (q.size() <= max_size) out.push_back(alpha_normal(q));
  return out;
}

RewriteSearch rewrite_related(const Process& p, const Process& q, CongruenceMode mode, std::size_t slack,
                              std::size_t cap) {
  RewriteSearch result;
  std::size_t max_size = std::max(p.size(), q.size()) + slack;
  if (prefix_signature(p) != prefix_signature(q)) return result;
  NameSet pool = free_names(p);
  for (const auto& n : free_names(q)) pool.insert(n);

  // side 0 grows from p, side 1 from q
  std::unordered_map<std::string, int> seen;
  std::deque<Process> frontier[2];
  Process start[2] = {alpha_normal(p), alpha_normal(q)};
  for (int side = 0; side < 2; ++side) {
    std::string k = key_of(start[side]);
    if (auto it = seen.find(k); it != seen.end() && it->second != side) {
      result.related = true;
      return result;
    }
    seen.emplace(k, side);
    frontier[side].push_back(start[side]);
  }
  while (!frontier[0].empty() || !frontier[1].empty()) {
    for (int side = 0; side < 2; ++side) {
      std::size_t layer = frontier[side].size();
      for (std::size_t i = 0; i < layer; ++i) {
        Process cur = frontier[side].front();
        frontier[side].pop_front();
        for (auto& nxt : rewrites(cur, mode, max_size, pool)) {
          std::string k = key_of(nxt);
          auto [it, fresh] = seen.emplace(k, side);
          if (!fresh) {
            if (it->second != side) {
              result.related = true;
              result.states = seen.size();
              return result;
            }
            continue;
          }
          if (seen.size() > cap) {
            result.complete = false;
            result.states = seen.size();
            return result;
          }
          frontier[side].push_back(std::move(nxt));
        }
      }
    }
  }
  result.states = seen.size();
  return result;
}

}  // namespace oracle
