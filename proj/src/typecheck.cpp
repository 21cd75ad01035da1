#include "floatauth/typecheck.hpp"

#include <sstream>
#include <stdexcept>

namespace floatauth {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::set<NameMultiset> minimize(const std::set<NameMultiset>& in) {
  std::set<NameMultiset> out;
  for (const auto& m : in) {
    bool dominated = false;
    for (const auto& o : in)
      if (o != m && o.subset_of(m)) {
        dominated = true;
        break;
      }
    if (!dominated) out.insert(m);
  }
  return out;
}

Untypable fail(Untypable::Kind k, std::string why) { return Untypable{k, std::move(why)}; }

std::string type_str(const AuthType& t) { return to_string(t); }

class Demands {
 public:
  DemandResult run(const TypeEnv& env, const Process& p) {
    return visit(
        overloaded{
            [&](const Nil&) -> DemandResult { return DemandAntichain::unit(); },
            [&](const Par& n) -> DemandResult {
              SymbolSet l = symbols(n.left), r = symbols(n.right);
              for (const auto& s : l)
                if (r.count(s))
                  return fail(Untypable::Kind::DuplicateSymbol,
                              "symbol #" + s.id + " occurs on both sides of a parallel composition");
              DemandResult a = run(env, n.left);
              if (std::holds_alternative<Untypable>(a)) return a;
              DemandResult b = run(env, n.right);
              if (std::holds_alternative<Untypable>(b)) return b;
              std::set<NameMultiset> sums;
              for (const auto& x : std::get<DemandAntichain>(a).minimal())
                for (const auto& y : std::get<DemandAntichain>(b).minimal()) sums.insert(x + y);
              return DemandAntichain(sums);
            },
            [&](const Auth& n) -> DemandResult {
              DemandResult a = run(env, n.body);
              if (std::holds_alternative<Untypable>(a)) return a;
              std::set<NameMultiset> out;
              for (const auto& m : std::get<DemandAntichain>(a).minimal()) out.insert(m.without_one(n.name));
              return DemandAntichain(out);
            },
            [&](const Out& n) -> DemandResult {
              auto ta = channel(env, n.subject);
              if (auto* u = std::get_if<Untypable>(&ta)) return *u;
              const AuthType& t_a = std::get<AuthType>(ta);
              if (t_a.carried().is_ground())
                return fail(Untypable::Kind::NotAChannel,
                            "'" + n.subject.text + "' has type " + type_str(t_a) + " and cannot carry names");
              auto tb = channel(env, n.object);
              if (auto* u = std::get_if<Untypable>(&tb)) return *u;
              const AuthType& t_b = std::get<AuthType>(tb);
              const AuthType& expected = t_a.carried();
              if (t_b.carried() != expected.carried())
                return fail(Untypable::Kind::CarriedTypeMismatch,
                            "'" + n.object.text + "' carries " + type_str(t_b.carried()) + " but '" +
                                n.subject.text + "' expects names carrying " + type_str(expected.carried()));
              if (!t_b.omega().included_in(expected.omega()))
                return fail(Untypable::Kind::NotSafeToSend,
                            "instantiations " + to_string(t_b.omega()) + " of '" + n.object.text +
                                "' are not among " + to_string(expected.omega()) + " expected on '" +
                                n.subject.text + "'");
              DemandResult a = run(env, n.cont);
              if (std::holds_alternative<Untypable>(a)) return a;
              return subject(std::get<DemandAntichain>(a), n.subject, t_a.omega());
            },
            [&](const In& n) -> DemandResult { return input(env, n.subject, n.binder, n.cont, false); },
            [&](const RepIn& n) -> DemandResult { return input(env, n.subject, n.binder, n.cont, true); },
            [&](const DelegOut& n) -> DemandResult {
              auto ta = channel(env, n.subject);
              if (auto* u = std::get_if<Untypable>(&ta)) return *u;
              DemandResult a = run(env, n.cont);
              if (std::holds_alternative<Untypable>(a)) return a;
              DemandResult s = subject(std::get<DemandAntichain>(a), n.subject, std::get<AuthType>(ta).omega());
              if (std::holds_alternative<Untypable>(s)) return s;
              std::set<NameMultiset> out;
              for (auto m : std::get<DemandAntichain>(s).minimal()) {
                m.add(n.object);
                out.insert(m);
              }
              return DemandAntichain(out);
            },
            [&](const DelegIn& n) -> DemandResult {
              auto ta = channel(env, n.subject);
              if (auto* u = std::get_if<Untypable>(&ta)) return *u;
              DemandResult a = run(env, n.cont);
              if (std::holds_alternative<Untypable>(a)) return a;
              std::set<NameMultiset> out;
              for (const auto& m : std::get<DemandAntichain>(a).minimal()) out.insert(m.without_one(n.object));
              return subject(DemandAntichain(out), n.subject, std::get<AuthType>(ta).omega());
            },
            [&](const Res& n) -> DemandResult { return restriction(env, n); },
        },
        p);
  }

 private:
  static std::variant<AuthType, Untypable> channel(const TypeEnv& env, const Name& a) {
    auto it = env.find(a);
    if (it == env.end()) return fail(Untypable::Kind::MissingAssumption, "no assumption for '" + a.text + "'");
    if (it->second.is_ground())
      return fail(Untypable::Kind::NotAChannel, "'" + a.text + "' has ground type and cannot be a channel");
    return it->second;
  }

  // a not in rho implies omega included in rho; the omega branch exists only for name sets.
  static DemandResult subject(const DemandAntichain& a, const Name& subj, const OmegaSet& omega) {
    std::set<NameMultiset> out;
    NameMultiset own{subj};
    std::optional<NameMultiset> inst;
    if (omega.symbol_free()) inst = NameMultiset::from_set(omega.name_elements());
    for (const auto& m : a.minimal()) {
      out.insert(m.join(own));
      if (inst) out.insert(m.join(*inst));
    }
    return DemandAntichain(out);
  }

  static Name apart(const Name& x, const TypeEnv& env, const Process& body, const NameSet& more = {}) {
    NameSet clash = env_names(env);
    clash.insert(more.begin(), more.end());
    if (!clash.count(x)) return x;
    NameSet taken = clash;
    auto all = all_names(body);
    taken.insert(all.begin(), all.end());
    return fresh_name(x, taken);
  }

  static std::string why_unauthorized(const Name& x, const AuthType& t) {
    if (t.is_ground()) return "name '" + x.text + "' is used but no authorization for it can be provided";
    if (t.omega().is_nu()) return "contextual authorization expected for nu-name '" + x.text + "'";
    if (!t.omega().symbol_elements().empty())
      return "contextual authorization expected for '" + x.text + "', which may stand for a restricted name " +
             to_string(t.omega());
    return "name '" + x.text + "' needs an authorization that its scope does not provide";
  }

  DemandResult input(const TypeEnv& env, const Name& a, const Name& x, const Process& cont, bool replicated) {
    auto ta = channel(env, a);
    if (auto* u = std::get_if<Untypable>(&ta)) return *u;
    const AuthType& t_a = std::get<AuthType>(ta);
    if (replicated) {
      SymbolSet syms = symbols(cont);
      if (!syms.empty())
        return fail(Untypable::Kind::SymbolUnderReplication,
                    "symbol #" + syms.begin()->id + " occurs under replicated input on '" + a.text + "'");
    }
    Name y = apart(x, env, cont, {a});
    Process body = y == x ? cont : rename_free(cont, {{x, y}});
    TypeEnv inner = env;
    inner[y] = t_a.carried();
    DemandResult r = run(inner, body);
    if (std::holds_alternative<Untypable>(r)) return r;
    const auto& got = std::get<DemandAntichain>(r);
    if (replicated) {
      NameMultiset own{a};
      for (const auto& m : got.minimal())
        if (m.subset_of(own)) return DemandAntichain::unit();
      return fail(Untypable::Kind::ReplicatedBodyDemand,
                  "body of replicated input on '" + a.text + "' needs " + to_string(got) +
                      " but only <" + a.text + "> is available");
    }
    std::set<NameMultiset> kept;
    for (const auto& m : got.minimal())
      if (!m.contains(y)) kept.insert(m);
    if (kept.empty()) return fail(Untypable::Kind::NoAcceptableDemand, why_unauthorized(x, t_a.carried()));
    return subject(DemandAntichain(kept), a, t_a.omega());
  }

  DemandResult restriction(const TypeEnv& env, const Res& n) {
    if (!n.tag || !n.annotation)
      return fail(Untypable::Kind::UntaggedRestriction,
                  "restriction of '" + n.binder.text + "' needs a symbol or ~ tag and a carried-type annotation");
    const AuthType& t = *n.annotation;
    Name a = apart(n.binder, env, n.body, t.names());
    Process body = a == n.binder ? n.body : rename_free(n.body, {{n.binder, a}});
    TypeEnv inner;
    if (const auto* r = std::get_if<Symbol>(&*n.tag)) {
      if (symbols(n.body).count(*r))
        return fail(Untypable::Kind::SymbolReused, "symbol #" + r->id + " occurs again inside its own restriction");
      for (const auto& [k, v] : env) inner[k] = v.replace_symbol(*r, a);
      inner[a] = AuthType::chan(OmegaSet::of_names({a}), t);
    } else {
      inner = env;
      inner[a] = AuthType::chan(OmegaSet::nu(), t);
    }
    DemandResult res = run(inner, body);
    if (std::holds_alternative<Untypable>(res)) return res;
    std::set<NameMultiset> kept;
    for (const auto& m : std::get<DemandAntichain>(res).minimal())
      if (!m.contains(a)) kept.insert(m);
    if (kept.empty())
      return fail(Untypable::Kind::NoAcceptableDemand,
                  "restricted name '" + n.binder.text + "' needs an authorization from outside its scope");
    return DemandAntichain(kept);
  }
};

class Oracle {
 public:
  bool run(const TypeEnv& env, const Process& p, const NameMultiset& rho) {
    return !hopeless(env, p) && derive(env, p, rho);
  }

 private:
  bool derive(const TypeEnv& env, const Process& p, const NameMultiset& rho) {
    return visit(
        overloaded{
            [&](const Nil&) { return true; },
            [&](const Par& n) {
              SymbolSet l = symbols(n.left), r = symbols(n.right);
              for (const auto& s : l)
                if (r.count(s)) return false;
              if (hopeless(env, n.left) || hopeless(env, n.right)) return false;
              auto parts = submultisets(rho);
              // largest left share first: typable goals usually succeed early
              for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
                const NameMultiset& part = *it;
                NameMultiset rest = rho;
                for (const auto& [k, c] : part.counts())
                  for (std::size_t i = 0; i < c; ++i) rest.remove_one(k);
                if (derive(env, n.left, part) && derive(env, n.right, rest)) return true;
              }
              return false;
            },
            [&](const Auth& n) { return derive(env, n.body, rho + NameMultiset{n.name}); },
            [&](const Out& n) {
              const AuthType* ta = lookup(env, n.subject);
              const AuthType* tb = lookup(env, n.object);
              if (!ta || !tb || ta->is_ground() || tb->is_ground() || ta->carried().is_ground()) return false;
              if (tb->carried() != ta->carried().carried()) return false;
              if (!tb->omega().included_in(ta->carried().omega())) return false;
              return authorized(rho, n.subject, ta->omega()) && derive(env, n.cont, rho);
            },
            [&](const In& n) {
              const AuthType* ta = lookup(env, n.subject);
              if (!ta || ta->is_ground() || !authorized(rho, n.subject, ta->omega())) return false;
              auto [inner, body] = bind(env, n.binder, ta->carried(), n.cont, rho);
              return derive(inner, body, rho);
            },
            [&](const RepIn& n) {
              const AuthType* ta = lookup(env, n.subject);
              if (!ta || ta->is_ground() || !symbols(n.cont).empty()) return false;
              auto [inner, body] = bind(env, n.binder, ta->carried(), n.cont, rho);
              return derive(inner, body, NameMultiset{n.subject});
            },
            [&](const DelegOut& n) {
              const AuthType* ta = lookup(env, n.subject);
              if (!ta || ta->is_ground() || !rho.contains(n.object)) return false;
              NameMultiset less = rho.without_one(n.object);
              return authorized(less, n.subject, ta->omega()) && derive(env, n.cont, less);
            },
            [&](const DelegIn& n) {
              const AuthType* ta = lookup(env, n.subject);
              if (!ta || ta->is_ground()) return false;
              return authorized(rho, n.subject, ta->omega()) && derive(env, n.cont, rho + NameMultiset{n.object});
            },
            [&](const Res& n) {
              if (!n.tag || !n.annotation) return false;
              NameSet avoid = rho.support();
              for (const auto& x : n.annotation->names()) avoid.insert(x);
              auto [a, body] = rename_binder(env, n.binder, n.body, avoid);
              TypeEnv inner;
              if (const auto* r = std::get_if<Symbol>(&*n.tag)) {
                if (symbols(n.body).count(*r)) return false;
                for (const auto& [k, v] : env) inner[k] = v.replace_symbol(*r, a);
                inner[a] = AuthType::chan(OmegaSet::of_names({a}), *n.annotation);
              } else {
                inner = env;
                inner[a] = AuthType::chan(OmegaSet::nu(), *n.annotation);
              }
              return derive(inner, body, rho);
            },
        },
        p);
  }

  // A premise that fails whatever rho is: no split of rho can help.
  static bool hopeless(const TypeEnv& env, const Process& p) {
    return visit(
        overloaded{
            [](const Nil&) { return false; },
            [&](const Par& n) {
              SymbolSet l = symbols(n.left), r = symbols(n.right);
              for (const auto& s : l)
                if (r.count(s)) return true;
              return hopeless(env, n.left) || hopeless(env, n.right);
            },
            [&](const Auth& n) { return hopeless(env, n.body); },
            [&](const Out& n) {
              const AuthType* ta = lookup(env, n.subject);
              const AuthType* tb = lookup(env, n.object);
              if (!ta || !tb || ta->is_ground() || tb->is_ground() || ta->carried().is_ground()) return true;
              if (tb->carried() != ta->carried().carried()) return true;
              if (!tb->omega().included_in(ta->carried().omega())) return true;
              return hopeless(env, n.cont);
            },
            [&](const In& n) {
              const AuthType* ta = lookup(env, n.subject);
              if (!ta || ta->is_ground()) return true;
              auto [inner, body] = bind(env, n.binder, ta->carried(), n.cont, {});
              return hopeless(inner, body);
            },
            [&](const RepIn& n) {
              const AuthType* ta = lookup(env, n.subject);
              if (!ta || ta->is_ground() || !symbols(n.cont).empty()) return true;
              // the body is checked against {subject} alone, whatever rho is
              NameMultiset own{n.subject};
              auto [inner, body] = bind(env, n.binder, ta->carried(), n.cont, own);
              return hopeless(inner, body) || !Oracle().run(inner, body, own);
            },
            [&](const DelegOut& n) {
              const AuthType* ta = lookup(env, n.subject);
              return !ta || ta->is_ground() || hopeless(env, n.cont);
            },
            [&](const DelegIn& n) {
              const AuthType* ta = lookup(env, n.subject);
              return !ta || ta->is_ground() || hopeless(env, n.cont);
            },
            [&](const Res& n) {
              if (!n.tag || !n.annotation) return true;
              NameSet avoid = n.annotation->names();
              auto [a, body] = rename_binder(env, n.binder, n.body, avoid);
              TypeEnv inner;
              if (const auto* r = std::get_if<Symbol>(&*n.tag)) {
                if (symbols(n.body).count(*r)) return true;
                for (const auto& [k, v] : env) inner[k] = v.replace_symbol(*r, a);
                inner[a] = AuthType::chan(OmegaSet::of_names({a}), *n.annotation);
              } else {
                inner = env;
                inner[a] = AuthType::chan(OmegaSet::nu(), *n.annotation);
              }
              return hopeless(inner, body);
            },
        },
        p);
  }

  static const AuthType* lookup(const TypeEnv& env, const Name& a) {
    auto it = env.find(a);
    return it == env.end() ? nullptr : &it->second;
  }

  static bool authorized(const NameMultiset& rho, const Name& a, const OmegaSet& omega) {
    if (rho.contains(a)) return true;
    if (!omega.symbol_free()) return false;
    for (const auto& n : omega.name_elements())
      if (!rho.contains(n)) return false;
    return true;
  }

  static std::pair<Name, Process> rename_binder(const TypeEnv& env, const Name& x, const Process& body,
                                                const NameSet& avoid) {
    NameSet clash = avoid;
    for (const auto& [k, v] : env) {
      clash.insert(k);
      auto ns = v.names();
      clash.insert(ns.begin(), ns.end());
    }
    if (!clash.count(x)) return {x, body};
    NameSet taken = clash;
    auto all = all_names(body);
    taken.insert(all.begin(), all.end());
    Name y = fresh_name(x, taken);
    return {y, rename_free(body, {{x, y}})};
  }

  static std::pair<TypeEnv, Process> bind(const TypeEnv& env, const Name& x, const AuthType& t,
                                          const Process& body, const NameMultiset& rho) {
    auto [y, renamed] = rename_binder(env, x, body, rho.support());
    TypeEnv inner = env;
    inner[y] = t;
    return {inner, renamed};
  }

  static std::vector<NameMultiset> submultisets(const NameMultiset& rho) {
    std::vector<NameMultiset> out{NameMultiset{}};
    for (const auto& [n, c] : rho.counts()) {
      std::vector<NameMultiset> next;
      for (const auto& m : out)
        for (std::size_t k = 0; k <= c; ++k) {
          NameMultiset e = m;
          e.add(n, k);
          next.push_back(e);
        }
      out = std::move(next);
    }
    return out;
  }
};

}  // namespace

TypeEnv env_of(const SourceFile& file) {
  TypeEnv env;
  for (const auto& a : file.assumptions) env[a.name] = a.type;
  return env;
}

NameSet env_names(const TypeEnv& env) {
  NameSet out;
  for (const auto& [k, v] : env) {
    out.insert(k);
    auto ns = v.names();
    out.insert(ns.begin(), ns.end());
  }
  return out;
}

DemandAntichain::DemandAntichain(std::set<NameMultiset> elems) : minimal_(minimize(elems)) {}

bool DemandAntichain::accepts(const NameMultiset& rho) const {
  for (const auto& m : minimal_)
    if (m.subset_of(rho)) return true;
  return false;
}

std::string to_string(const DemandAntichain& a) {
  std::string out = "{";
  bool first = true;
  for (const auto& m : a.minimal()) {
    if (!first) out += ", ";
    first = false;
    out += to_string(m);
  }
  return out + "}";
}

DemandResult demands(const TypeEnv& env, const Process& p) {
  DemandResult r = Demands().run(env, p);
  if (auto* a = std::get_if<DemandAntichain>(&r); a && a->empty())
    return fail(Untypable::Kind::NoAcceptableDemand, "no demand makes the process typable");
  return r;
}

Verdict check(const TypeEnv& env, const Process& p) {
  for (const auto& [name, t] : env) {
    bool own = !t.is_ground() && t.omega() == OmegaSet::of_names({name});
    bool nu = !t.is_ground() && t.omega().is_nu();
    if (!own && !nu)
      return fail(Untypable::Kind::BadAssumption, "assumption for '" + name.text + "' must have the form {" +
                                                      name.text + "}(T) or ~(T), got " + to_string(t));
  }
  DemandResult r = demands(env, p);
  if (auto* u = std::get_if<Untypable>(&r)) return *u;
  const auto& a = std::get<DemandAntichain>(r);
  if (a.accepts(NameMultiset{})) return WellTyped{};
  return NotClosed{a};
}

Verdict check(const SourceFile& file) { return check(env_of(file), file.process); }

std::string to_string(const Verdict& v) {
  return std::visit(overloaded{
                        [](const WellTyped&) { return std::string("welltyped"); },
                        [](const Untypable& u) { return "untypable: " + u.reason; },
                        [](const NotClosed& n) { return "notclosed " + to_string(n.antichain); },
                    },
                    v);
}

bool oracle_typable(const TypeEnv& env, const Process& p, const NameMultiset& rho, std::size_t bound) {
  for (const auto& [n, c] : rho.counts())
    if (c > bound) throw std::invalid_argument("demand multiplicity exceeds the oracle bound");
  return Oracle().run(env, p, rho);
}

}  // namespace floatauth
