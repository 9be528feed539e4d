#include "srl/type.hpp"

#include <sstream>

namespace srl {

const TypePtr& Type::atom() {
  static const TypePtr a = std::make_shared<Type>(Type{true, {}, nullptr});
  return a;
}

TypePtr Type::arrow(TypeList source, TypePtr target) {
  return std::make_shared<Type>(Type{false, std::move(source), std::move(target)});
}

bool type_eq(const TypePtr& a, const TypePtr& b) {
  if (a.get() == b.get()) return true;
  if (a->is_atom != b->is_atom) return false;
  if (a->is_atom) return true;
  return list_eq(a->source, b->source) && type_eq(a->target, b->target);
}

bool list_eq(const TypeList& a, const TypeList& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!type_eq(a[i], b[i])) return false;
  return true;
}

int type_size(const TypePtr& a) {
  if (a->is_atom) return 1;
  return 1 + list_size(a->source) + type_size(a->target);
}

int list_size(const TypeList& a) {
  int n = 0;
  for (auto& t : a) n += type_size(t);
  return n;
}

std::string show_type(const TypePtr& a) {
  if (a->is_atom) return "o";
  return show_list(a->source) + " -o " + (a->target->is_atom ? "o" : "(" + show_type(a->target) + ")");
}

std::string show_list(const TypeList& a) {
  std::ostringstream out;
  out << "[";
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) out << ",";
    out << show_type(a[i]);
  }
  out << "]";
  return out.str();
}

std::vector<TypeList> eta_unroll(const TypePtr& a) {
  std::vector<TypeList> seq;
  const Type* cur = a.get();
  while (!cur->is_atom) {
    seq.push_back(cur->source);
    cur = cur->target.get();
  }
  return seq;
}

TypePtr eta_roll(const std::vector<TypeList>& seq) {
  TypePtr a = Type::atom();
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) a = Type::arrow(*it, a);
  return a;
}

int type_cmp(const TypePtr& a, const TypePtr& b) {
  if (a->is_atom && b->is_atom) return 0;
  if (a->is_atom) return -1;
  if (b->is_atom) return 1;
  if (int c = list_cmp(a->source, b->source)) return c;
  return type_cmp(a->target, b->target);
}

int list_cmp(const TypeList& a, const TypeList& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i)
    if (int c = type_cmp(a[i], b[i])) return c;
  return 0;
}

}  // namespace srl
