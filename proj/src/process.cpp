#include "floatauth/process.hpp"

#include <functional>

namespace floatauth {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const Process& shared_nil() {
  static const Process p = make_process(Nil{});
  return p;
}

void collect_free(const Process& p, NameSet& bound_here, NameSet& out);

void collect_free_under(const Process& body, const Name& binder, NameSet& bound_here, NameSet& out) {
  bool inserted = bound_here.insert(binder).second;
  collect_free(body, bound_here, out);
  if (inserted) bound_here.erase(binder);
}

void note(const Name& n, const NameSet& bound_here, NameSet& out) {
  if (!bound_here.count(n)) out.insert(n);
}

void collect_free(const Process& p, NameSet& bound_here, NameSet& out) {
  visit(overloaded{
            [](const Nil&) {},
            [&](const Par& n) {
              collect_free(n.left, bound_here, out);
              collect_free(n.right, bound_here, out);
            },
            [&](const Res& n) {
              if (n.annotation)
                for (const auto& m : n.annotation->names()) note(m, bound_here, out);
              collect_free_under(n.body, n.binder, bound_here, out);
            },
            [&](const Auth& n) {
              note(n.name, bound_here, out);
              collect_free(n.body, bound_here, out);
            },
            [&](const Out& n) {
              note(n.subject, bound_here, out);
              note(n.object, bound_here, out);
              collect_free(n.cont, bound_here, out);
            },
            [&](const In& n) {
              note(n.subject, bound_here, out);
              collect_free_under(n.cont, n.binder, bound_here, out);
            },
            [&](const DelegOut& n) {
              note(n.subject, bound_here, out);
              note(n.object, bound_here, out);
              collect_free(n.cont, bound_here, out);
            },
            [&](const DelegIn& n) {
              note(n.subject, bound_here, out);
              note(n.object, bound_here, out);
              collect_free(n.cont, bound_here, out);
            },
            [&](const RepIn& n) {
              note(n.subject, bound_here, out);
              collect_free_under(n.cont, n.binder, bound_here, out);
            },
        },
        p);
}

void collect_all(const Process& p, NameSet& out, bool binders_only) {
  visit(overloaded{
            [](const Nil&) {},
            [&](const Par& n) {
              collect_all(n.left, out, binders_only);
              collect_all(n.right, out, binders_only);
            },
            [&](const Res& n) {
              out.insert(n.binder);
              if (!binders_only && n.annotation) {
                auto ns = n.annotation->names();
                out.insert(ns.begin(), ns.end());
              }
              collect_all(n.body, out, binders_only);
            },
            [&](const Auth& n) {
              if (!binders_only) out.insert(n.name);
              collect_all(n.body, out, binders_only);
            },
            [&](const Out& n) {
              if (!binders_only) out.insert({n.subject, n.object});
              collect_all(n.cont, out, binders_only);
            },
            [&](const In& n) {
              if (!binders_only) out.insert(n.subject);
              out.insert(n.binder);
              collect_all(n.cont, out, binders_only);
            },
            [&](const DelegOut& n) {
              if (!binders_only) out.insert({n.subject, n.object});
              collect_all(n.cont, out, binders_only);
            },
            [&](const DelegIn& n) {
              if (!binders_only) out.insert({n.subject, n.object});
              collect_all(n.cont, out, binders_only);
            },
            [&](const RepIn& n) {
              if (!binders_only) out.insert(n.subject);
              out.insert(n.binder);
              collect_all(n.cont, out, binders_only);
            },
        },
        p);
}

class Substitution {
 public:
  Substitution(const Name& replacement, const Name& placeholder, NameSet taken)
      : to_(replacement), from_(placeholder), taken_(std::move(taken)) {
    taken_.insert(to_);
  }

  Process apply(const Process& p) {
    return visit(
        overloaded{
            [&](const Nil&) { return p; },
            [&](const Par& n) { return par(apply(n.left), apply(n.right)); },
            [&](const Res& n) {
              std::optional<AuthType> ann;
              if (n.annotation) ann = n.annotation->rename(from_, to_);
              auto [binder, body] = under_binder(n.binder, n.body);
              return res(binder, n.tag, ann, body);
            },
            [&](const Auth& n) { return auth(sub(n.name), apply(n.body)); },
            [&](const Out& n) { return out(sub(n.subject), sub(n.object), apply(n.cont)); },
            [&](const In& n) {
              auto [binder, cont] = under_binder(n.binder, n.cont);
              return in(sub(n.subject), binder, cont);
            },
            [&](const DelegOut& n) {
              return deleg_out(sub(n.subject), sub(n.object), apply(n.cont));
            },
            [&](const DelegIn& n) {
              return deleg_in(sub(n.subject), sub(n.object), apply(n.cont));
            },
            [&](const RepIn& n) {
              auto [binder, cont] = under_binder(n.binder, n.cont);
              return rep_in(sub(n.subject), binder, cont);
            },
        },
        p);
  }

 private:
  Name sub(const Name& n) const { return n == from_ ? to_ : n; }

  std::pair<Name, Process> under_binder(const Name& binder, const Process& body) {
    if (binder == from_) return {binder, body};
    if (!free_names(body).count(from_)) return {binder, body};
    if (binder == to_) {
      Name fresh = fresh_name(binder, taken_);
      taken_.insert(fresh);
      Process renamed = rename_free(body, {{binder, fresh}});
      return {fresh, apply(renamed)};
    }
    return {binder, apply(body)};
  }

  Name to_, from_;
  NameSet taken_;
};

Process rename_impl(const Process& p, std::map<Name, Name>& mapping);

Process rename_under(const Process& body, const Name& binder, std::map<Name, Name>& mapping) {
  auto it = mapping.find(binder);
  if (it == mapping.end()) return rename_impl(body, mapping);
  Name saved = it->second;
  mapping.erase(it);
  Process r = mapping.empty() ? body : rename_impl(body, mapping);
  mapping.emplace(binder, saved);
  return r;
}

Process rename_impl(const Process& p, std::map<Name, Name>& mapping) {
  auto m = [&](const Name& n) {
    auto it = mapping.find(n);
    return it == mapping.end() ? n : it->second;
  };
  return visit(
      overloaded{
          [&](const Nil&) { return p; },
          [&](const Par& n) { return par(rename_impl(n.left, mapping), rename_impl(n.right, mapping)); },
          [&](const Res& n) {
            std::optional<AuthType> ann = n.annotation;
            if (ann)
              for (const auto& [from, to] : mapping) ann = ann->rename(from, to);
            return res(n.binder, n.tag, ann, rename_under(n.body, n.binder, mapping));
          },
          [&](const Auth& n) { return auth(m(n.name), rename_impl(n.body, mapping)); },
          [&](const Out& n) { return out(m(n.subject), m(n.object), rename_impl(n.cont, mapping)); },
          [&](const In& n) { return in(m(n.subject), n.binder, rename_under(n.cont, n.binder, mapping)); },
          [&](const DelegOut& n) {
            return deleg_out(m(n.subject), m(n.object), rename_impl(n.cont, mapping));
          },
          [&](const DelegIn& n) {
            return deleg_in(m(n.subject), m(n.object), rename_impl(n.cont, mapping));
          },
          [&](const RepIn& n) {
            return rep_in(m(n.subject), n.binder, rename_under(n.cont, n.binder, mapping));
          },
      },
      p);
}

void find_symbols(const Process& p, std::vector<std::pair<Symbol, std::string>>& out,
                  bool under_rep, WellFormedness& first_rep, const std::string& path) {
  visit(overloaded{
            [](const Nil&) {},
            [&](const Par& n) {
              find_symbols(n.left, out, under_rep, first_rep, path + "0");
              find_symbols(n.right, out, under_rep, first_rep, path + "1");
            },
            [&](const Res& n) {
              if (n.tag)
                if (const auto* s = std::get_if<Symbol>(&*n.tag)) {
                  out.emplace_back(*s, path);
                  if (under_rep && first_rep.ok()) {
                    first_rep.violation = WellFormedness::Violation::SymbolUnderReplication;
                    first_rep.symbol = *s;
                    first_rep.where = path;
                  }
                }
              find_symbols(n.body, out, under_rep, first_rep, path + "0");
            },
            [&](const Auth& n) { find_symbols(n.body, out, under_rep, first_rep, path + "0"); },
            [&](const Out& n) { find_symbols(n.cont, out, under_rep, first_rep, path + "0"); },
            [&](const In& n) { find_symbols(n.cont, out, under_rep, first_rep, path + "0"); },
            [&](const DelegOut& n) { find_symbols(n.cont, out, under_rep, first_rep, path + "0"); },
            [&](const DelegIn& n) { find_symbols(n.cont, out, under_rep, first_rep, path + "0"); },
            [&](const RepIn& n) { find_symbols(n.cont, out, true, first_rep, path + "0"); },
        },
        p);
}

}  // namespace

Process::Process() : node_(shared_nil().node_) {}

std::size_t Process::size() const {
  return 1 + visit(overloaded{
                       [](const Nil&) -> std::size_t { return 0; },
                       [](const Par& n) { return n.left.size() + n.right.size(); },
                       [](const Res& n) { return n.body.size(); },
                       [](const Auth& n) { return n.body.size(); },
                       [](const auto& n) { return n.cont.size(); },
                   },
                   *this);
}

bool Process::operator==(const Process& other) const {
  if (node_ == other.node_) return true;
  if (node().index() != other.node().index()) return false;
  return visit(
      overloaded{
          [](const Nil&) { return true; },
          [&](const Par& n) {
            const auto& o = *other.as<Par>();
            return n.left == o.left && n.right == o.right;
          },
          [&](const Res& n) {
            const auto& o = *other.as<Res>();
            return n.binder == o.binder && n.tag == o.tag && n.annotation == o.annotation &&
                   n.body == o.body;
          },
          [&](const Auth& n) {
            const auto& o = *other.as<Auth>();
            return n.name == o.name && n.body == o.body;
          },
          [&](const Out& n) {
            const auto& o = *other.as<Out>();
            return n.subject == o.subject && n.object == o.object && n.cont == o.cont;
          },
          [&](const In& n) {
            const auto& o = *other.as<In>();
            return n.subject == o.subject && n.binder == o.binder && n.cont == o.cont;
          },
          [&](const DelegOut& n) {
            const auto& o = *other.as<DelegOut>();
            return n.subject == o.subject && n.object == o.object && n.cont == o.cont;
          },
          [&](const DelegIn& n) {
            const auto& o = *other.as<DelegIn>();
            return n.subject == o.subject && n.object == o.object && n.cont == o.cont;
          },
          [&](const RepIn& n) {
            const auto& o = *other.as<RepIn>();
            return n.subject == o.subject && n.binder == o.binder && n.cont == o.cont;
          },
      },
      *this);
}

Process nil() { return shared_nil(); }
Process par(Process left, Process right) { return make_process(Par{std::move(left), std::move(right)}); }

Process par_all(const std::vector<Process>& parts) {
  if (parts.empty()) return nil();
  Process acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = par(acc, parts[i]);
  return acc;
}

Process res(Name binder, Process body) {
  return make_process(Res{std::move(binder), std::nullopt, std::nullopt, std::move(body)});
}
Process res(Name binder, std::optional<SymbolTag> tag, std::optional<AuthType> annotation,
            Process body) {
  return make_process(Res{std::move(binder), std::move(tag), std::move(annotation), std::move(body)});
}
Process wrap(const std::vector<Binding>& bindings, Process body) {
  for (auto it = bindings.rbegin(); it != bindings.rend(); ++it)
    body = res(it->binder, it->tag, it->annotation, body);
  return body;
}

Process auth(Name name, Process body) { return make_process(Auth{std::move(name), std::move(body)}); }

Process auth_all(const NameMultiset& names, Process body) {
  // innermost scope gets the largest name so the chain prints in sorted order
  for (auto it = names.counts().rbegin(); it != names.counts().rend(); ++it)
    for (std::size_t k = 0; k < it->second; ++k) body = auth(it->first, body);
  return body;
}

Process out(Name subject, Name object, Process cont) {
  return make_process(Out{std::move(subject), std::move(object), std::move(cont)});
}
Process in(Name subject, Name binder, Process cont) {
  return make_process(In{std::move(subject), std::move(binder), std::move(cont)});
}
Process deleg_out(Name subject, Name object, Process cont) {
  return make_process(DelegOut{std::move(subject), std::move(object), std::move(cont)});
}
Process deleg_in(Name subject, Name object, Process cont) {
  return make_process(DelegIn{std::move(subject), std::move(object), std::move(cont)});
}
Process rep_in(Name subject, Name binder, Process cont) {
  return make_process(RepIn{std::move(subject), std::move(binder), std::move(cont)});
}

NameSet free_names(const Process& p) {
  NameSet bound_here, out;
  collect_free(p, bound_here, out);
  return out;
}

NameSet bound_names(const Process& p) {
  NameSet out;
  collect_all(p, out, true);
  return out;
}

NameSet all_names(const Process& p) {
  NameSet out;
  collect_all(p, out, false);
  return out;
}

SymbolSet symbols(const Process& p) {
  std::vector<std::pair<Symbol, std::string>> found;
  WellFormedness ignore;
  find_symbols(p, found, false, ignore, "");
  SymbolSet out;
  for (const auto& [s, path] : found) out.insert(s);
  return out;
}

Process substitute(const Process& p, const Name& replacement, const Name& placeholder) {
  if (replacement == placeholder || !free_names(p).count(placeholder)) return p;
  return Substitution(replacement, placeholder, all_names(p)).apply(p);
}

Process rename_free(const Process& p, const std::map<Name, Name>& mapping) {
  if (mapping.empty()) return p;
  auto m = mapping;
  return rename_impl(p, m);
}

std::string WellFormedness::message() const {
  switch (violation) {
    case Violation::None:
      return "well-formed";
    case Violation::DuplicateSymbol:
      return "symbol #" + symbol.id + " occurs more than once";
    case Violation::SymbolUnderReplication:
      return "symbol #" + symbol.id + " occurs under replicated input (at path " +
             (where.empty() ? std::string("root") : where) + ")";
  }
  return {};
}

WellFormedness well_formed(const Process& p) {
  std::vector<std::pair<Symbol, std::string>> found;
  WellFormedness rep;
  find_symbols(p, found, false, rep, "");
  std::map<Symbol, std::string> seen;
  for (const auto& [s, path] : found) {
    if (seen.count(s)) {
      WellFormedness w;
      w.violation = WellFormedness::Violation::DuplicateSymbol;
      w.symbol = s;
      w.where = path;
      return w;
    }
    seen.emplace(s, path);
  }
  return rep;
}

}  // namespace floatauth
