#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "srl/morphism.hpp"

namespace srl {

// Raw structural resource terms: variables, annotated abstractions, and
// applications to ordered bags.
struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum Kind { Var, Abs, App };
  Kind kind;
  std::string name;              // Var subject / Abs binder
  std::optional<ListMorph> ann;  // Abs; nullopt = identity of the inferred list
  TermPtr sub;                   // Abs body / App function
  std::vector<TermPtr> bag;      // App arguments

  static TermPtr var(std::string name);
  static TermPtr abs(std::string name, std::optional<ListMorph> ann, TermPtr body);
  static TermPtr app(TermPtr fun, std::vector<TermPtr> bag);
};

std::string show_term(const TermPtr& t);
bool term_eq(const TermPtr& a, const TermPtr& b);  // literal (post-freshening) equality

int occurrences(const TermPtr& t, const std::string& x);
std::vector<std::string> free_vars(const TermPtr& t);  // first-occurrence order

// Rename binders so that all bound names are distinct from each other and
// from every free name; deterministic.
TermPtr freshen(const TermPtr& t);

}  // namespace srl
