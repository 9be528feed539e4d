#pragma once

#include <stdexcept>

#include "srl/context.hpp"
#include "srl/term.hpp"

namespace srl {

// Typing derivations mirroring the term structure, plus explicit bag nodes.
// Every node carries a context over the variables in scope at that node.
struct Deriv;
using DerivPtr = std::shared_ptr<const Deriv>;

struct Deriv {
  enum Kind { Var, Abs, App, Bag };
  Kind kind;
  Context ctx;
  TypePtr ty;       // term nodes
  TypeList bag_ty;  // Bag node
  std::string name;  // Var subject / Abs binder
  ListMorph ann;     // Abs
  std::vector<DerivPtr> kids;  // Abs: [body]; App: [fun, bag]; Bag: elements
};

struct CheckError : std::runtime_error {
  std::string code;
  CheckError(std::string code_, const std::string& msg)
      : std::runtime_error(code_ + ": " + msg), code(std::move(code_)) {}
};

// The unique derivation of gamma |- s : a, if any. The conclusion type is an
// output. gamma's lists give the types of the free occurrences left to right
// and must be consumed exactly.
DerivPtr check(const Context& gamma, const TermPtr& s);
DerivPtr infer_closed(const TermPtr& s);

int deriv_size(const DerivPtr& d);
bool deriv_eq(const DerivPtr& a, const DerivPtr& b);
TermPtr erase(const DerivPtr& d);

// Machine-readable one-node-per-line rendering.
std::string show_deriv(const DerivPtr& d);

}  // namespace srl
