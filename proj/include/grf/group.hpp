#pragma once

#include <memory>
#include <string>
#include <vector>

namespace grf {

/// Finite group presented by an explicit multiplication table.
///
/// Elements are the integers 0..order-1 and element 0 is always the
/// identity.  The table is validated eagerly on construction: identity
/// law, Latin-square property, two-sided inverses, and associativity
/// (exhaustive up to order 64, randomized sampling above that).
class FiniteGroup {
public:
  FiniteGroup(std::vector<std::vector<int>> cayley,
              std::vector<std::string> names);

  int order() const { return order_; }
  int mul(int a, int b) const { return cayley_[a][b]; }
  int inverse(int a) const { return inverse_[a]; }
  const std::string& name(int a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::vector<int>>& table() const { return cayley_; }

  /// g^n for any integer n; negative exponents go through the inverse.
  int power(int g, long long n) const;

  /// Smallest k >= 1 with g^k = identity.
  int element_order(int g) const;

  bool is_abelian() const;

private:
  void validate() const;

  int order_ = 0;
  std::vector<std::vector<int>> cayley_;
  std::vector<int> inverse_;
  std::vector<std::string> names_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Additive cyclic group of order n >= 1; element i is named "i".
GroupPtr make_cyclic(int n);

/// Direct product with pairs ordered (a, b) = a * order(second) ... i.e.
/// id(a, b) = a * g2.order() + b, named "(na,nb)".
GroupPtr make_direct_product(const FiniteGroup& g1, const FiniteGroup& g2);

/// Dihedral group of order 2n (n >= 2).  Ids 0..n-1 are the rotations
/// r^k, ids n..2n-1 are the reflections s*r^k.
GroupPtr make_dihedral(int n);

/// Symmetric group on n symbols, 1 <= n <= 5.  Elements are the
/// permutations of {0..n-1} in lexicographic order of their one-line
/// form, so the identity comes first.  Product is composition:
/// (p*q)(x) = p(q(x)).
GroupPtr make_symmetric(int n);

struct Subgroup {
  GroupPtr parent;
  std::vector<int> members;  // sorted, always contains 0
};

/// The cyclic subgroup generated by g*g.
Subgroup square_generated_subgroup(const GroupPtr& group, int g);

/// Right cosets H*g as sorted blocks; blocks ordered by smallest member.
/// The blocks partition 0..order-1.
std::vector<std::vector<int>> right_cosets(const Subgroup& h);

/// True iff perm (a permutation of 0..order-1) preserves the table:
/// perm[a*b] = perm[a]*perm[b].  Throws invalid_argument if perm is not
/// a permutation of the right length.
bool check_automorphism(const FiniteGroup& group, const std::vector<int>& perm);

struct Automorphism {
  std::vector<int> perm;
};

/// Builds a group from a spec string: "Z<n>", "D<n>", "S<n>", direct
/// products joined with "x" (e.g. "Z2xZ2xZ3"), or "@file:<path>" for an
/// explicit Cayley-table file.  Throws invalid_argument with a message
/// naming the problem (syntax, or the first violated group axiom).
GroupPtr parse_group_spec(const std::string& text);

/// Serializes a group in the Cayley-table file format understood by
/// "@file:":  "|G| = n" header, a names line, then n rows of n ids.
std::string render_cayley_table(const FiniteGroup& group);

/// Structural equality: same order and identical multiplication table.
bool same_structure(const FiniteGroup& a, const FiniteGroup& b);

}  // namespace grf
