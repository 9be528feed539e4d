#pragma once

#include <memory>
#include <string>
#include <vector>

namespace srl {

// Resource types: the atom `o`, or [a1,...,ak] -o a where the source is an
// ordered list (possibly empty) and the target is again a resource type.
struct Type;
using TypePtr = std::shared_ptr<const Type>;
using TypeList = std::vector<TypePtr>;

struct Type {
  bool is_atom;
  TypeList source;  // empty for the atom
  TypePtr target;   // null for the atom

  static const TypePtr& atom();
  static TypePtr arrow(TypeList source, TypePtr target);
};

bool type_eq(const TypePtr& a, const TypePtr& b);
bool list_eq(const TypeList& a, const TypeList& b);

// Number of nodes of the syntax tree (atom = 1, arrow = 1 + sources + target).
int type_size(const TypePtr& a);
int list_size(const TypeList& a);

std::string show_type(const TypePtr& a);
std::string show_list(const TypeList& a);

// Eta view: every type reads uniquely as ([a1] ... [an]) -o o, a sequence of
// lists ending in the atom. unroll/roll convert between the two readings.
std::vector<TypeList> eta_unroll(const TypePtr& a);
TypePtr eta_roll(const std::vector<TypeList>& seq);

// Total order on types used wherever a canonical enumeration order is needed:
// atom first, then arrows ordered lexicographically (source length, sources
// left to right, then target).
int type_cmp(const TypePtr& a, const TypePtr& b);
int list_cmp(const TypeList& a, const TypeList& b);

}  // namespace srl
