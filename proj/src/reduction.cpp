#include "floatauth/reduction.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "floatauth/congruence.hpp"
#include "floatauth/syntax.hpp"

namespace floatauth {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Process step_into(const Process& p, int dir) {
  if (const auto* n = p.as<Par>()) {
    if (dir == 0) return n->left;
    if (dir == 1) return n->right;
  } else if (const auto* n = p.as<Auth>()) {
    if (dir == 0) return n->body;
  }
  throw std::invalid_argument("context path must cross only parallel compositions and authorization scopes");
}

// nodes[i] is the node reached after i steps; nodes.back() is the hole content.
std::vector<Process> nodes_on(const Process& root, const Path& path) {
  std::vector<Process> nodes{root};
  for (int d : path) nodes.push_back(step_into(nodes.back(), d));
  return nodes;
}

bool is_prefix(const Path& pre, const Path& path) {
  return pre.size() <= path.size() && std::equal(pre.begin(), pre.end(), path.begin());
}

Process remove_at(const Process& node, Path& here, const std::set<Path>& removals) {
  bool below = std::any_of(removals.begin(), removals.end(),
                           [&](const Path& r) { return is_prefix(here, r); });
  if (!below) return node;
  if (const auto* n = node.as<Auth>()) {
    here.push_back(0);
    Process body = remove_at(n->body, here, removals);
    here.pop_back();
    return removals.count(here) ? body : auth(n->name, body);
  }
  if (const auto* n = node.as<Par>()) {
    here.push_back(0);
    Process l = remove_at(n->left, here, removals);
    here.back() = 1;
    Process r = remove_at(n->right, here, removals);
    here.pop_back();
    return par(l, r);
  }
  return node;
}

Path shorten(const Path& hole, const std::set<Path>& removals) {
  Path out;
  for (std::size_t i = 0; i < hole.size(); ++i) {
    Path pre(hole.begin(), hole.begin() + i);
    if (!removals.count(pre)) out.push_back(hole[i]);
  }
  return out;
}

// Positions (prefix lengths) of Auth(c) nodes strictly above the hole, in [from, to).
std::vector<std::size_t> auth_positions(const std::vector<Process>& nodes, const Name& c,
                                        std::size_t from, std::size_t to) {
  std::vector<std::size_t> out;
  for (std::size_t i = from; i < to; ++i)
    if (const auto* a = nodes[i].as<Auth>(); a && a->name == c) out.push_back(i);
  return out;
}

struct Plan {
  std::set<Path> removals;
  NameMultiset missing;
};

Plan plan_two(const RedexSites& ctx, const NameMultiset& r1, const NameMultiset& r2) {
  const Path &p1 = ctx.site1, &p2 = ctx.site2;
  std::size_t split = 0;
  while (split < p1.size() && split < p2.size() && p1[split] == p2[split]) ++split;
  if (split == p1.size() || split == p2.size())
    throw std::invalid_argument("redex sites must not be nested");
  auto n1 = nodes_on(ctx.root, p1);
  auto n2 = nodes_on(ctx.root, p2);
  if (!n1[split].is<Par>()) throw std::invalid_argument("redex sites must split at a parallel composition");

  Plan plan;
  NameSet names = r1.support();
  for (const auto& n : r2.support()) names.insert(n);
  for (const auto& c : names) {
    auto shared = auth_positions(n1, c, 0, split);
    auto own1 = auth_positions(n1, c, split + 1, p1.size());
    auto own2 = auth_positions(n2, c, split + 1, p2.size());
    std::size_t want1 = r1.count(c), want2 = r2.count(c);
    std::size_t take1 = std::min(want1, own1.size()), take2 = std::min(want2, own2.size());
    std::size_t rest = (want1 - take1) + (want2 - take2);
    if (rest > shared.size()) {
      plan.missing.add(c, rest - shared.size());
      continue;
    }
    for (std::size_t k = 0; k < take1; ++k)
      plan.removals.insert(Path(p1.begin(), p1.begin() + own1[own1.size() - 1 - k]));
    for (std::size_t k = 0; k < take2; ++k)
      plan.removals.insert(Path(p2.begin(), p2.begin() + own2[own2.size() - 1 - k]));
    for (std::size_t k = 0; k < rest; ++k)
      plan.removals.insert(Path(p1.begin(), p1.begin() + shared[shared.size() - 1 - k]));
  }
  return plan;
}

// Visible names are kept; a clashing binder takes the smallest free suffix.
struct Hoister {
  NameSet avoid;   // names a kept binder must not take
  NameSet taken;   // names a fresh binder must not take
  std::vector<Binding> binders;

  Process run(const Process& p, std::map<Name, Name>& ren) {
    auto r = [&](const Name& n) {
      auto it = ren.find(n);
      return it == ren.end() ? n : it->second;
    };
    return visit(
        overloaded{
            [&](const Nil&) { return p; },
            [&](const Par& n) {
              Process l = run(n.left, ren);
              return par(l, run(n.right, ren));
            },
            [&](const Auth& n) { return auth(r(n.name), run(n.body, ren)); },
            [&](const Res& n) {
              Name chosen = n.binder;
              if (avoid.count(chosen)) chosen = fresh_name(n.binder, taken);
              avoid.insert(chosen);
              taken.insert(chosen);
              std::optional<AuthType> ann = n.annotation;
              if (ann)
                for (const auto& [from, to] : ren) ann = ann->rename(from, to);
              binders.push_back({chosen, n.tag, ann});
              auto saved = ren.find(n.binder);
              std::optional<Name> old;
              if (saved != ren.end()) old = saved->second;
              ren[n.binder] = chosen;
              Process body = run(n.body, ren);
              if (old)
                ren[n.binder] = *old;
              else
                ren.erase(n.binder);
              return body;
            },
            [&](const auto&) { return rename_free(p, ren); },
        },
        p);
  }
};

void collect_leaves(const Process& p, Path& here, std::vector<std::pair<Path, Process>>& out) {
  if (const auto* n = p.as<Par>()) {
    here.push_back(0);
    collect_leaves(n->left, here, out);
    here.back() = 1;
    collect_leaves(n->right, here, out);
    here.pop_back();
  } else if (const auto* n = p.as<Auth>()) {
    here.push_back(0);
    collect_leaves(n->body, here, out);
    here.pop_back();
  } else if (!p.is<Nil>()) {
    out.emplace_back(here, p);
  }
}

}  // namespace

Process subterm(const Process& root, const Path& path) { return nodes_on(root, path).back(); }

Process replace_at(const Process& root, const Path& path, const Process& replacement) {
  auto nodes = nodes_on(root, path);
  Process acc = replacement;
  for (std::size_t i = path.size(); i-- > 0;) {
    const Process& parent = nodes[i];
    if (const auto* a = parent.as<Auth>())
      acc = auth(a->name, acc);
    else if (const auto* pr = parent.as<Par>())
      acc = path[i] == 0 ? par(acc, pr->right) : par(pr->left, acc);
  }
  return acc;
}

std::optional<OneHoleContext> drift1(const OneHoleContext& ctx, const NameMultiset& remove) {
  auto nodes = nodes_on(ctx.root, ctx.hole);
  std::set<Path> removals;
  for (const auto& [c, want] : remove.counts()) {
    auto pos = auth_positions(nodes, c, 0, ctx.hole.size());
    if (pos.size() < want) return std::nullopt;
    for (std::size_t k = 0; k < want; ++k)
      removals.insert(Path(ctx.hole.begin(), ctx.hole.begin() + pos[pos.size() - 1 - k]));
  }
  Path here;
  return OneHoleContext{remove_at(ctx.root, here, removals), shorten(ctx.hole, removals)};
}

std::optional<RedexSites> drift2(const RedexSites& ctx, const NameMultiset& remove1,
                                 const NameMultiset& remove2) {
  Plan plan = plan_two(ctx, remove1, remove2);
  if (!plan.missing.empty()) return std::nullopt;
  Path here;
  return RedexSites{remove_at(ctx.root, here, plan.removals), shorten(ctx.site1, plan.removals),
                    shorten(ctx.site2, plan.removals)};
}

NameMultiset drift2_deficit(const RedexSites& ctx, const NameMultiset& remove1,
                            const NameMultiset& remove2) {
  return plan_two(ctx, remove1, remove2).missing;
}

std::string print_context(const OneHoleContext& ctx) {
  return print_with_holes(ctx.root, {{&subterm(ctx.root, ctx.hole).node(), "_"}});
}

std::string print_context(const RedexSites& ctx) {
  return print_with_holes(ctx.root, {{&subterm(ctx.root, ctx.site1).node(), "_1"},
                                     {&subterm(ctx.root, ctx.site2).node(), "_2"}});
}

Prepared prepare(const Process& p) {
  Hoister h;
  h.avoid = free_names(p);
  h.taken = all_names(p);
  std::map<Name, Name> ren;
  Process skeleton = h.run(p, ren);
  return {std::move(h.binders), skeleton};
}

Enumeration enumerate_redexes(const Process& p) {
  Enumeration e{prepare(p), {}};
  const Process& sk = e.prepared.skeleton;
  std::vector<std::pair<Path, Process>> leaves;
  Path here;
  collect_leaves(sk, here, leaves);

  for (const auto& [q1, l1] : leaves) {
    for (const auto& [q2, l2] : leaves) {
      if (q1 == q2) continue;
      if (const auto* o = l1.as<Out>()) {
        if (const auto* i = l2.as<In>(); i && i->subject == o->subject) {
          e.redexes.push_back({RedexKind::Comm, o->subject, o->object, {sk, q1, q2}, false});
        } else if (const auto* r = l2.as<RepIn>(); r && r->subject == o->subject) {
          Process copy = auth(r->subject, in(r->subject, r->binder, r->cont));
          Process unfolded = replace_at(sk, q2, par(l2, copy));
          Path site2 = q2;
          site2.push_back(1);
          site2.push_back(0);
          e.redexes.push_back({RedexKind::Comm, o->subject, o->object, {unfolded, q1, site2}, true});
        }
      } else if (const auto* d = l1.as<DelegOut>()) {
        if (const auto* di = l2.as<DelegIn>();
            di && di->subject == d->subject && di->object == d->object)
          e.redexes.push_back({RedexKind::Deleg, d->subject, d->object, {sk, q1, q2}, false});
      }
    }
  }
  return e;
}

std::pair<NameMultiset, NameMultiset> required_authorizations(const Redex& r) {
  if (r.kind == RedexKind::Comm) return {NameMultiset{r.subject}, NameMultiset{r.subject}};
  return {NameMultiset{r.subject, r.object}, NameMultiset{r.subject}};
}

std::vector<Step> steps(const Process& p) {
  Enumeration e = enumerate_redexes(p);
  std::vector<Step> out;
  for (const auto& r : e.redexes) {
    auto [need1, need2] = required_authorizations(r);
    Step s{r, std::nullopt, drift2_deficit(r.sites, need1, need2)};
    if (s.missing.empty()) {
      RedexSites after = *drift2(r.sites, need1, need2);
      Process left = subterm(after.root, after.site1);
      Process right = subterm(after.root, after.site2);
      Process fill1, fill2;
      if (r.kind == RedexKind::Comm) {
        const auto* o = left.as<Out>();
        const auto* i = right.as<In>();
        fill1 = auth(r.subject, o->cont);
        fill2 = auth(r.subject, substitute(i->cont, o->object, i->binder));
      } else {
        fill1 = auth(r.subject, left.as<DelegOut>()->cont);
        fill2 = auth(r.subject, auth(r.object, right.as<DelegIn>()->cont));
      }
      Process filled = replace_at(after.root, after.site1, fill1);
      filled = replace_at(filled, after.site2, fill2);
      s.result = wrap(e.prepared.binders, filled);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Process> reduce(const Process& p) {
  std::vector<Process> out;
  std::set<std::string> seen;
  for (const auto& s : steps(p))
    if (s.result && seen.insert(canonicalize(*s.result).serialization).second) out.push_back(*s.result);
  return out;
}

std::vector<ErrorWitness> error_witnesses(const Process& p) {
  std::vector<ErrorWitness> out;
  for (const auto& s : steps(p))
    if (!s.result) out.push_back({s.redex, s.missing, print_context(s.redex.sites)});
  return out;
}

bool is_error(const Process& p) { return !error_witnesses(p).empty(); }

std::string to_string(RedexKind k) { return k == RedexKind::Comm ? "comm" : "deleg"; }

}  // namespace floatauth
