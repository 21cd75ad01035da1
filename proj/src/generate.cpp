#include "floatauth/generate.hpp"

#include <algorithm>
#include <map>

namespace floatauth {

namespace {

const std::vector<Name> kFree{Name{"a"}, Name{"b"}, Name{"c"}, Name{"d"}};
const std::vector<Symbol> kSymbols{Symbol{"r"}, Symbol{"s"}};
const std::vector<Name> kInputBinders{Name{"x"}, Name{"y"}, Name{"z"}};
const std::vector<Name> kResBinders{Name{"e"}, Name{"f"}, Name{"g"}};

// Pair: complementary prefixes on one channel, composed in parallel.
enum class Kind { Nil, Par, Pair, Auth, Res, Out, In, DelegOut, DelegIn, RepIn };

struct Scope {
  std::vector<std::pair<Name, AuthType>> names;  // later entries shadow earlier ones

  std::vector<std::pair<Name, AuthType>> visible() const {
    std::map<Name, AuthType> last;
    for (const auto& [n, t] : names) last.insert_or_assign(n, t);
    return {last.begin(), last.end()};
  }
  Scope with(const Name& n, const AuthType& t) const {
    Scope s = *this;
    s.names.emplace_back(n, t);
    return s;
  }
  Scope replacing(const Symbol& r, const Name& y) const {
    Scope s;
    for (const auto& [n, t] : names) s.names.emplace_back(n, t.replace_symbol(r, y));
    return s;
  }
};

class Builder {
 public:
  Builder(Generator& g, const GenOptions& o) : g_(g), o_(o) {}

  TypeEnv env() {
    TypeEnv env;
    std::vector<Name> level0, level1;
    for (std::size_t i = 0; i < std::min(o_.free_names, kFree.size()); ++i)
      (g_.chance(0.4) ? level0 : level1).push_back(kFree[i]);
    for (const auto& n : level0) env[n] = AuthType::chan(own_or_nu(n, 0.2), AuthType::ground());
    for (const auto& n : level1) {
      AuthType carried = AuthType::chan(carried_omega(level0), AuthType::ground());
      env[n] = AuthType::chan(own_or_nu(n, 0.15), carried);
    }
    return env;
  }

  Process process(const Scope& scope, std::size_t size, bool under_rep) {
    if (size <= 1) return nil();
    std::vector<std::pair<Kind, double>> kinds{{Kind::Out, 1.0}, {Kind::In, 1.0}, {Kind::Auth, 3 * o_.auth_density}};
    if (o_.delegation) {
      kinds.push_back({Kind::DelegOut, 0.4});
      kinds.push_back({Kind::DelegIn, 0.4});
    }
    if (o_.restriction) kinds.push_back({Kind::Res, 0.35});
    if (o_.replication && !under_rep) kinds.push_back({Kind::RepIn, 0.25});
    if (size >= 3) kinds.push_back({Kind::Par, 1.2});
    if (size >= 5) kinds.push_back({Kind::Pair, 1.5});

    Kind kind = pick(kinds);
    switch (kind) {
      case Kind::Par: {
        std::size_t left = 1 + g_.uniform(size - 2);
        Process l = process(scope, left, under_rep);
        return par(l, process(scope, size - 1 - left, under_rep));
      }
      case Kind::Pair:
        return pair(scope, size, under_rep);
      case Kind::Auth:
        return auth(any_name(scope), process(scope, size - 1, under_rep));
      case Kind::Res:
        return restriction(scope, size, under_rep);
      case Kind::Out: {
        auto [a, ta] = channel(scope, true);
        Name b = object_for(scope, ta);
        return out(a, b, process(scope, size - 1, under_rep));
      }
      case Kind::In:
      case Kind::RepIn: {
        auto [a, ta] = channel(scope);
        Name x = kInputBinders[g_.uniform(kInputBinders.size())];
        AuthType tx = ta.is_ground() ? AuthType::ground() : ta.carried();
        bool rep = kind == Kind::RepIn;
        Process body = process(scope.with(x, tx), size - 1, under_rep || rep);
        return rep ? rep_in(a, x, body) : in(a, x, body);
      }
      case Kind::DelegOut: {
        auto [a, ta] = channel(scope);
        return deleg_out(a, any_name(scope), process(scope, size - 1, under_rep));
      }
      case Kind::DelegIn: {
        auto [a, ta] = channel(scope);
        return deleg_in(a, any_name(scope), process(scope, size - 1, under_rep));
      }
      case Kind::Nil:
        break;
    }
    return nil();
  }

 private:
  Generator& g_;
  const GenOptions& o_;
  SymbolSet used_;
  std::size_t res_count_ = 0;

  OmegaSet own_or_nu(const Name& n, double p_nu) {
    return g_.chance(p_nu) ? OmegaSet::nu() : OmegaSet::of_names({n});
  }

  OmegaSet carried_omega(const std::vector<Name>& level0) {
    if (g_.chance(0.15)) return OmegaSet::nu();
    std::set<OmegaElem> elems;
    for (const auto& n : level0)
      if (g_.chance(0.6)) elems.insert(n);
    for (const auto& s : kSymbols)
      if (g_.chance(0.3)) elems.insert(s);
    if (elems.empty()) elems.insert(level0.empty() ? OmegaElem{kSymbols[0]} : OmegaElem{level0[0]});
    return OmegaSet::of(std::move(elems));
  }

  Kind pick(const std::vector<std::pair<Kind, double>>& kinds) {
    double total = 0;
    for (const auto& [k, w] : kinds) total += w;
    double r = static_cast<double>(g_.uniform(1u << 20)) / (1u << 20) * total;
    for (const auto& [k, w] : kinds) {
      if (r < w) return k;
      r -= w;
    }
    return kinds.back().first;
  }

  Name any_name(const Scope& scope) {
    auto vis = scope.visible();
    return vis[g_.uniform(vis.size())].first;
  }

  // `carrier`: the channel must carry names, as output subjects need.
  std::pair<Name, AuthType> channel(const Scope& scope, bool carrier = false) {
    auto vis = scope.visible();
    std::vector<std::pair<Name, AuthType>> chans;
    for (const auto& e : vis)
      if (!e.second.is_ground() && !(carrier && e.second.carried().is_ground())) chans.push_back(e);
    if (chans.empty() || !g_.chance(o_.type_bias)) return vis[g_.uniform(vis.size())];
    return chans[g_.uniform(chans.size())];
  }

  Name object_for(const Scope& scope, const AuthType& ta) {
    auto vis = scope.visible();
    if (!ta.is_ground() && !ta.carried().is_ground() && g_.chance(o_.type_bias)) {
      const AuthType& want = ta.carried();
      std::vector<Name> fit;
      for (const auto& [n, t] : vis)
        if (!t.is_ground() && t.carried() == want.carried() && t.omega().included_in(want.omega()))
          fit.push_back(n);
      if (!fit.empty()) return fit[g_.uniform(fit.size())];
    }
    return vis[g_.uniform(vis.size())].first;
  }

  Process pair(const Scope& scope, std::size_t size, bool under_rep) {
    bool deleg = o_.delegation && g_.chance(0.3);
    auto [a, ta] = channel(scope, !deleg);
    std::size_t rest = size - 5;  // par node, two prefixes, two continuations
    bool auth_l = rest >= 1 && g_.chance(0.75);
    rest -= auth_l;
    bool auth_r = rest >= 1 && g_.chance(0.75);
    rest -= auth_r;
    std::size_t left = g_.uniform(rest + 1);
    Process l, r;
    if (deleg) {
      Name b = any_name(scope);
      l = deleg_out(a, b, process(scope, left + 1, under_rep));
      r = deleg_in(a, b, process(scope, rest - left + 1, under_rep));
    } else {
      Name b = object_for(scope, ta);
      Name x = kInputBinders[g_.uniform(kInputBinders.size())];
      AuthType tx = ta.is_ground() ? AuthType::ground() : ta.carried();
      l = out(a, b, process(scope, left + 1, under_rep));
      bool rep = !under_rep && o_.replication && g_.chance(0.2);
      Process body = process(scope.with(x, tx), rest - left + 1, under_rep || rep);
      r = rep ? rep_in(a, x, body) : in(a, x, body);
    }
    if (auth_l) l = auth(a, l);
    if (auth_r) r = auth(a, r);
    return g_.chance(0.5) ? par(l, r) : par(r, l);
  }

  Process restriction(const Scope& scope, std::size_t size, bool under_rep) {
    Name y = kResBinders[res_count_++ % kResBinders.size()];
    AuthType carried = AuthType::ground();
    if (g_.chance(0.3)) {
      std::vector<Name> level0;
      for (const auto& [n, t] : scope.visible())
        if (!t.is_ground() && t.carried().is_ground() && !t.omega().is_nu()) level0.push_back(n);
      if (!level0.empty()) carried = AuthType::chan(OmegaSet::of_names({level0[g_.uniform(level0.size())]}), AuthType::ground());
    }
    std::vector<Symbol> free_syms;
    for (const auto& s : kSymbols)
      if (!used_.count(s)) free_syms.push_back(s);
    bool nu = under_rep || free_syms.empty() || g_.chance(0.35);
    std::optional<Symbol> r;
    Scope inner = scope;
    if (!nu) {
      r = free_syms[g_.uniform(free_syms.size())];
      used_.insert(*r);
      inner = scope.replacing(*r, y);
    }
    inner = inner.with(y, AuthType::chan(nu ? OmegaSet::nu() : OmegaSet::of_names({y}), carried));
    Process body = size >= 3 && g_.chance(0.5) ? auth(y, process(inner, size - 2, under_rep))
                                               : process(inner, size - 1, under_rep);
    return nu ? res(y, Nu{}, carried, body) : res(y, *r, carried, body);
  }
};

}  // namespace

Generator::Generator(std::uint64_t seed, GenOptions opts) : rng_(seed), opts_(opts) {}

std::uint64_t Generator::uniform(std::uint64_t n) { return n <= 1 ? 0 : rng_() % n; }

bool Generator::chance(double p) { return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p; }

Sample Generator::next() {
  Builder b(*this, opts_);
  Sample s;
  s.env = b.env();
  Scope scope;
  for (const auto& [n, t] : s.env) scope.names.emplace_back(n, t);
  std::size_t lo = std::max<std::size_t>(1, opts_.min_size);
  std::size_t size = lo + uniform(opts_.max_size - lo + 1);
  s.process = b.process(scope, size, false);
  return s;
}

Sample Generator::close(Sample s) {
  DemandResult d = demands(s.env, s.process);
  if (const auto* a = std::get_if<DemandAntichain>(&d); a && !a->accepts({}))
    s.process = auth_all(*a->minimal().begin(), s.process);
  return s;
}

}  // namespace floatauth
