#pragma once

#include <memory>
#include <string>
#include <vector>

#include "srl/type.hpp"

namespace srl {

// A map [m] -> [n] given by an explicit 1-based table. Read backwards when it
// reindexes a list: the i-th entry of the result is the table[i]-th entry of
// the source.
struct IndexMap {
  int codomain = 0;        // n
  std::vector<int> table;  // size m, entries in 1..n

  int domain() const { return static_cast<int>(table.size()); }
  bool is_identity() const;
  bool is_bijection() const;

  static IndexMap identity(int n);
  // (a . b)(i) = a(b(i)); requires a.domain() == b.codomain.
  static IndexMap compose(const IndexMap& a, const IndexMap& b);
};

bool index_eq(const IndexMap& a, const IndexMap& b);
std::string show_index(const IndexMap& a);

// a^[alpha]: pick entries of `a` according to the table.
TypeList apply_index(const TypeList& a, const IndexMap& alpha);

struct TypeMorph;
using TypeMorphPtr = std::shared_ptr<const TypeMorph>;

// <alpha; f_1,...,f_l> : a -> b between intersection types, where
// alpha : [l] -> [|a|] and f_i : a_{alpha(i)} -> b_i. The source is stored;
// the target is recomputed from the pieces.
struct ListMorph {
  TypeList source;
  IndexMap alpha;
  std::vector<TypeMorphPtr> nested;

  TypeList target() const;
  bool is_identity() const;
  bool is_ground() const;  // all nested pieces are identities
  bool is_linear() const;
  bool is_perm() const;  // ground with bijective alpha

  static ListMorph identity(const TypeList& a);
  static ListMorph ground(const TypeList& a, IndexMap alpha);
  // g . f; requires f.target() == g.source.
  static ListMorph compose(const ListMorph& g, const ListMorph& f);
};

// Morphisms between resource types: the identity at the atom, or l -o r
// between arrow types, with l contravariant (l : cod.source -> dom.source)
// and r covariant (r : dom.target -> cod.target).
struct TypeMorph {
  bool is_atom;
  ListMorph left;     // meaningful iff !is_atom
  TypeMorphPtr right;  // meaningful iff !is_atom

  TypePtr domain() const;
  TypePtr codomain() const;
  bool is_identity() const;
  bool is_linear() const;

  static TypeMorphPtr atom();
  static TypeMorphPtr arrow(ListMorph left, TypeMorphPtr right);
  static TypeMorphPtr identity(const TypePtr& a);
  // g . f; requires f.codomain() == g.domain().
  static TypeMorphPtr compose(const TypeMorphPtr& g, const TypeMorphPtr& f);
};

bool list_morph_eq(const ListMorph& a, const ListMorph& b);
bool type_morph_eq(const TypeMorphPtr& a, const TypeMorphPtr& b);

std::string show_list_morph(const ListMorph& f, bool with_typing = true);
std::string show_type_morph(const TypeMorphPtr& f);

// Structural morphisms.
ListMorph contraction(const TypePtr& a, int n);           // <a> -> <a>^n
ListMorph weakening(const TypeList& a, int i);            // drop the i-th (1-based)
ListMorph terminal(const TypeList& a);                    // a -> <>
ListMorph permutation(const TypeList& a, IndexMap table);  // bijective reindex

// Block sum of list morphisms, acting on concatenated lists.
ListMorph block_sum(const ListMorph& a, const ListMorph& b);

// Factorization f = nest(f) . ground(f): ground(f) reindexes with identity
// pieces, nest(f) keeps the positions and applies the pieces.
ListMorph ground_part(const ListMorph& f);
ListMorph nest_part(const ListMorph& f);

// Chains of arrow morphisms ending at the atom, matching the eta view of
// types. seq_arrow(parts) is the morphism (a1..an)-o o -> (b1..bn)-o o whose
// level-i left component is parts[i] : b_i -> a_i (contravariant). arrow_parts
// inverts this on morphisms between eta-unrolled types.
TypeMorphPtr seq_arrow(const std::vector<ListMorph>& lefts);
std::vector<ListMorph> arrow_parts(const TypeMorphPtr& f);

}  // namespace srl
