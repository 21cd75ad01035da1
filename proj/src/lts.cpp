#include "floatauth/lts.hpp"

#include <sstream>

namespace floatauth {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const Name kPlaceholder{"%in"};

struct Renamer {
  NameSet avoid, taken;

  Process run(const Process& p) {
    return visit(overloaded{
                     [&](const Par& n) {
                       Process l = run(n.left);
                       return par(l, run(n.right));
                     },
                     [&](const Auth& n) { return auth(n.name, run(n.body)); },
                     [&](const Res& n) {
                       Name chosen = n.binder;
                       Process body = n.body;
                       if (avoid.count(chosen)) {
                         chosen = fresh_name(n.binder, taken);
                         body = rename_free(body, {{n.binder, chosen}});
                       }
                       avoid.insert(chosen);
                       taken.insert(chosen);
                       return res(chosen, n.tag, n.annotation, run(body));
                     },
                     [&](const auto&) { return p; },
                 },
                 p);
  }
};

Process rename_apart(const Process& p, const NameSet& extra) {
  Renamer r;
  r.avoid = free_names(p);
  r.avoid.insert(extra.begin(), extra.end());
  r.taken = all_names(p);
  r.taken.insert(extra.begin(), extra.end());
  return r.run(p);
}

NameMultiset lacking(const Name& a, int have) {
  NameMultiset m;
  m.add(a, static_cast<std::size_t>(2 - have));
  return m;
}

bool claim(int& flag) {
  if (flag) return false;
  flag = 1;
  return true;
}

class Engine {
 public:
  std::vector<Transition> run(const Process& p) {
    return visit(
        overloaded{
            [](const Nil&) { return std::vector<Transition>{}; },
            [&](const Out& n) {
              return std::vector<Transition>{{OutL{n.subject, n.object, 0, false}, auth(n.subject, n.cont), {}}};
            },
            [&](const In& n) {
              Process t = auth(n.subject, substitute(n.cont, kPlaceholder, n.binder));
              return std::vector<Transition>{{InL{n.subject, kPlaceholder, 0}, t, {}}};
            },
            [&](const DelegOut& n) {
              return std::vector<Transition>{{DelegOutL{n.subject, n.object, 0, 0}, auth(n.subject, n.cont), {}}};
            },
            [&](const DelegIn& n) {
              return std::vector<Transition>{
                  {DelegInL{n.subject, n.object, 0}, auth(n.subject, auth(n.object, n.cont)), {}}};
            },
            [&](const RepIn& n) {
              Process copy = auth(n.subject, substitute(n.cont, kPlaceholder, n.binder));
              return std::vector<Transition>{{InL{n.subject, kPlaceholder, 1}, par(copy, p), {}}};
            },
            [&](const Auth& n) { return scope(n.name, run(n.body)); },
            [&](const Res& n) { return restrict(n, run(n.body)); },
            [&](const Par& n) { return parallel(n.left, n.right); },
        },
        p);
  }

 private:
  static std::vector<Transition> scope(const Name& a, std::vector<Transition> ts) {
    for (auto& t : ts) {
      bool consumed = std::visit(
          overloaded{
              [&](TauL& l) {
                if (!l.lacking.contains(a)) return false;
                l.lacking.remove_one(a);
                return true;
              },
              [&](OutL& l) { return l.subject == a && claim(l.subj_flag); },
              [&](InL& l) { return l.subject == a && claim(l.subj_flag); },
              [&](DelegInL& l) { return l.subject == a && claim(l.subj_flag); },
              [&](DelegOutL& l) {
                // a<a> fills the subject slot first, then the object slot
                return (l.subject == a && claim(l.subj_flag)) || (l.object == a && claim(l.obj_flag));
              },
          },
          t.label);
      if (!consumed) t.target = auth(a, t.target);
    }
    return ts;
  }

  static std::vector<Transition> restrict(const Res& r, std::vector<Transition> ts) {
    std::vector<Transition> out;
    for (auto& t : ts) {
      if (auto* o = std::get_if<OutL>(&t.label); o && !o->bound && o->object == r.binder && o->subject != r.binder) {
        o->bound = true;
        t.extruded = Binding{r.binder, r.tag, r.annotation};
        out.push_back(std::move(t));
        continue;
      }
      if (label_names(t.label).count(r.binder)) continue;
      t.target = res(r.binder, r.tag, r.annotation, t.target);
      out.push_back(std::move(t));
    }
    return out;
  }

  std::vector<Transition> parallel(const Process& left, const Process& right) {
    auto tl = run(left);
    auto tr = run(right);
    NameSet fl = free_names(left), fr = free_names(right);
    std::vector<Transition> out;

    auto extrusion_ok = [](const Transition& t, const NameSet& other) {
      const auto* o = std::get_if<OutL>(&t.label);
      return !(o && o->bound && other.count(o->object));
    };
    for (const auto& t : tl)
      if (extrusion_ok(t, fr)) out.push_back({t.label, par(t.target, right), t.extruded});
    for (const auto& t : tr)
      if (extrusion_ok(t, fl)) out.push_back({t.label, par(left, t.target), t.extruded});

    synchronize(tl, tr, fr, true, out);
    synchronize(tr, tl, fl, false, out);
    return out;
  }

  // Sender transitions from `snd`, receiver transitions from `rcv`.
  static void synchronize(const std::vector<Transition>& snd, const std::vector<Transition>& rcv,
                          const NameSet& rcv_free, bool sender_left, std::vector<Transition>& out) {
    auto join = [&](const Process& s, const Process& r) { return sender_left ? par(s, r) : par(r, s); };
    for (const auto& ts : snd) {
      for (const auto& tr : rcv) {
        if (const auto* o = std::get_if<OutL>(&ts.label)) {
          const auto* i = std::get_if<InL>(&tr.label);
          if (!i || i->subject != o->subject) continue;
          TauL tau{lacking(o->subject, o->subj_flag + i->subj_flag)};
          Process received = substitute(tr.target, o->object, i->object);
          if (!o->bound) {
            out.push_back({tau, join(ts.target, received), {}});
          } else if (!rcv_free.count(o->object)) {
            const Binding& b = *ts.extruded;
            out.push_back({tau, res(b.binder, b.tag, b.annotation, join(ts.target, received)), {}});
          }
        } else if (const auto* d = std::get_if<DelegOutL>(&ts.label)) {
          const auto* di = std::get_if<DelegInL>(&tr.label);
          if (!di || di->subject != d->subject || di->object != d->object) continue;
          NameMultiset miss = lacking(d->subject, d->subj_flag + di->subj_flag);
          miss.add(d->object, static_cast<std::size_t>(1 - d->obj_flag));
          out.push_back({TauL{miss}, join(ts.target, tr.target), {}});
        }
      }
    }
  }
};

std::string flag(const Name& n, int f) { return f ? "<" + n.text + ">^1 " : ""; }

}  // namespace

std::string to_string(const Label& l) {
  return std::visit(
      overloaded{
          [](const OutL& o) {
            std::string s = o.bound ? "(nu " + o.object.text + ") " : "";
            return s + flag(o.subject, o.subj_flag) + o.subject.text + "!" + o.object.text;
          },
          [](const InL& i) { return flag(i.subject, i.subj_flag) + i.subject.text + "?" + i.object.text; },
          [](const DelegOutL& d) {
            return flag(d.subject, d.subj_flag) + flag(d.object, d.obj_flag) + d.subject.text + "<" +
                   d.object.text + ">";
          },
          [](const DelegInL& d) {
            return flag(d.subject, d.subj_flag) + d.subject.text + "(" + d.object.text + ")";
          },
          [](const TauL& t) { return "tau" + to_string(t.lacking); },
      },
      l);
}

bool is_tau(const Label& l) {
  const auto* t = std::get_if<TauL>(&l);
  return t && t->lacking.empty();
}

NameSet label_names(const Label& l) {
  return std::visit(overloaded{
                        [](const TauL& t) { return t.lacking.support(); },
                        [](const InL& i) {
                          NameSet s{i.subject};
                          if (i.object != kPlaceholder) s.insert(i.object);
                          return s;
                        },
                        [](const auto& x) { return NameSet{x.subject, x.object}; },
                    },
                    l);
}

Name designated_fresh(const Process& p, const NameSet& universe) {
  NameSet taken = all_names(p);
  taken.insert(universe.begin(), universe.end());
  return fresh_name(Name{"n"}, taken);
}

std::vector<Transition> transitions(const Process& p, const NameSet& universe) {
  Name fresh = designated_fresh(p, universe);
  NameSet objects = universe;
  objects.insert(fresh);
  Process q = rename_apart(p, objects);
  std::vector<Transition> out;
  for (auto& t : Engine().run(q)) {
    if (const auto* i = std::get_if<InL>(&t.label)) {
      for (const auto& n : objects)
        out.push_back({InL{i->subject, n, i->subj_flag}, substitute(t.target, n, kPlaceholder), {}});
    } else {
      out.push_back(std::move(t));
    }
  }
  return out;
}

std::vector<Process> tau_successors(const Process& p) {
  std::vector<Process> out;
  for (auto& t : Engine().run(rename_apart(p, {})))
    if (is_tau(t.label)) out.push_back(std::move(t.target));
  return out;
}

}  // namespace floatauth
