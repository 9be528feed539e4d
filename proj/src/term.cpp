#include "srl/term.hpp"

#include <map>
#include <set>
#include <sstream>

namespace srl {

TermPtr Term::var(std::string name) {
  return std::make_shared<Term>(Term{Var, std::move(name), std::nullopt, nullptr, {}});
}

TermPtr Term::abs(std::string name, std::optional<ListMorph> ann, TermPtr body) {
  return std::make_shared<Term>(Term{Abs, std::move(name), std::move(ann), std::move(body), {}});
}

TermPtr Term::app(TermPtr fun, std::vector<TermPtr> bag) {
  return std::make_shared<Term>(Term{App, "", std::nullopt, std::move(fun), std::move(bag)});
}

std::string show_term(const TermPtr& t) {
  switch (t->kind) {
    case Term::Var:
      return t->name;
    case Term::Abs: {
      std::string body = show_term(t->sub);
      std::string ann = t->ann ? "^{" + show_list_morph(*t->ann, false) + "}" : "";
      return "\\" + t->name + ann + ". " + body;
    }
    case Term::App: {
      std::string fun = show_term(t->sub);
      if (t->sub->kind == Term::Abs) fun = "(" + fun + ")";
      std::ostringstream out;
      out << fun << " [";
      for (size_t i = 0; i < t->bag.size(); ++i) {
        if (i) out << ",";
        out << show_term(t->bag[i]);
      }
      out << "]";
      return out.str();
    }
  }
  return "";
}

bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Var:
      return a->name == b->name;
    case Term::Abs:
      if (a->name != b->name) return false;
      if (a->ann.has_value() != b->ann.has_value()) return false;
      if (a->ann && !list_morph_eq(*a->ann, *b->ann)) return false;
      return term_eq(a->sub, b->sub);
    case Term::App:
      if (!term_eq(a->sub, b->sub)) return false;
      if (a->bag.size() != b->bag.size()) return false;
      for (size_t i = 0; i < a->bag.size(); ++i)
        if (!term_eq(a->bag[i], b->bag[i])) return false;
      return true;
  }
  return false;
}

int occurrences(const TermPtr& t, const std::string& x) {
  switch (t->kind) {
    case Term::Var:
      return t->name == x ? 1 : 0;
    case Term::Abs:
      return t->name == x ? 0 : occurrences(t->sub, x);
    case Term::App: {
      int n = occurrences(t->sub, x);
      for (auto& e : t->bag) n += occurrences(e, x);
      return n;
    }
  }
  return 0;
}

static void free_vars_rec(const TermPtr& t, std::set<std::string>& bound,
                          std::vector<std::string>& out, std::set<std::string>& seen) {
  switch (t->kind) {
    case Term::Var:
      if (!bound.count(t->name) && seen.insert(t->name).second) out.push_back(t->name);
      break;
    case Term::Abs: {
      bool fresh = bound.insert(t->name).second;
      free_vars_rec(t->sub, bound, out, seen);
      if (fresh) bound.erase(t->name);
      break;
    }
    case Term::App:
      free_vars_rec(t->sub, bound, out, seen);
      for (auto& e : t->bag) free_vars_rec(e, bound, out, seen);
      break;
  }
}

std::vector<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> bound, seen;
  std::vector<std::string> out;
  free_vars_rec(t, bound, out, seen);
  return out;
}

namespace {
struct Freshener {
  std::set<std::string> used;
  int counter = 0;

  std::string pick(const std::string& base) {
    if (used.insert(base).second) return base;
    while (true) {
      std::string cand = base + "_" + std::to_string(++counter);
      if (used.insert(cand).second) return cand;
    }
  }

  TermPtr run(const TermPtr& t, std::map<std::string, std::string>& ren) {
    switch (t->kind) {
      case Term::Var: {
        auto it = ren.find(t->name);
        return Term::var(it == ren.end() ? t->name : it->second);
      }
      case Term::Abs: {
        std::string nn = pick(t->name);
        auto old = ren.find(t->name);
        std::optional<std::string> saved;
        if (old != ren.end()) saved = old->second;
        ren[t->name] = nn;
        TermPtr body = run(t->sub, ren);
        if (saved)
          ren[t->name] = *saved;
        else
          ren.erase(t->name);
        return Term::abs(nn, t->ann, body);
      }
      case Term::App: {
        TermPtr fun = run(t->sub, ren);
        std::vector<TermPtr> bag;
        for (auto& e : t->bag) bag.push_back(run(e, ren));
        return Term::app(fun, bag);
      }
    }
    return nullptr;
  }
};
}  // namespace

TermPtr freshen(const TermPtr& t) {
  Freshener f;
  for (auto& v : free_vars(t)) f.used.insert(v);
  std::map<std::string, std::string> ren;
  return f.run(t, ren);
}

}  // namespace srl
