#include "grf/group.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace grf {

namespace {

std::string axiom_error(const std::string& which, const std::string& detail) {
  return "group axiom violated: " + which + " (" + detail + ")";
}

}  // namespace

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> cayley,
                         std::vector<std::string> names)
    : order_(static_cast<int>(cayley.size())),
      cayley_(std::move(cayley)),
      names_(std::move(names)) {
  if (order_ == 0) throw std::invalid_argument("group order must be >= 1");
  if (names_.empty()) {
    names_.reserve(order_);
    for (int i = 0; i < order_; ++i) names_.push_back("g" + std::to_string(i));
  }
  if (static_cast<int>(names_.size()) != order_)
    throw std::invalid_argument("names size does not match group order");
  validate();
  inverse_.assign(order_, -1);
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b)
      if (cayley_[a][b] == 0) inverse_[a] = b;
}

void FiniteGroup::validate() const {
  const int n = order_;
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(cayley_[a].size()) != n)
      throw std::invalid_argument("cayley table is not square");
    for (int b = 0; b < n; ++b) {
      int c = cayley_[a][b];
      if (c < 0 || c >= n)
        throw std::invalid_argument("cayley entry out of range");
    }
  }
  for (int a = 0; a < n; ++a) {
    if (cayley_[0][a] != a)
      throw std::invalid_argument(
          axiom_error("identity", "0*" + std::to_string(a) + " != " +
                                      std::to_string(a)));
    if (cayley_[a][0] != a)
      throw std::invalid_argument(
          axiom_error("identity", std::to_string(a) + "*0 != " +
                                      std::to_string(a)));
  }
  // Latin square: every row and column is a permutation.
  std::vector<char> seen(n);
  for (int a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < n; ++b) {
      if (seen[cayley_[a][b]]++)
        throw std::invalid_argument(
            axiom_error("Latin square", "row " + std::to_string(a) +
                                            " repeats an element"));
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < n; ++b) {
      if (seen[cayley_[b][a]]++)
        throw std::invalid_argument(
            axiom_error("Latin square", "column " + std::to_string(a) +
                                            " repeats an element"));
    }
  }
  // Two-sided inverses.
  for (int a = 0; a < n; ++a) {
    int right = -1;
    for (int b = 0; b < n; ++b)
      if (cayley_[a][b] == 0) right = b;
    if (right < 0 || cayley_[right][a] != 0)
      throw std::invalid_argument(
          axiom_error("inverse", "element " + std::to_string(a) +
                                     " has no two-sided inverse"));
  }
  auto check_triple = [&](int a, int b, int c) {
    if (cayley_[cayley_[a][b]][c] != cayley_[a][cayley_[b][c]])
      throw std::invalid_argument(axiom_error(
          "associativity", "(" + std::to_string(a) + "*" + std::to_string(b) +
                               ")*" + std::to_string(c) + " != " +
                               std::to_string(a) + "*(" + std::to_string(b) +
                               "*" + std::to_string(c) + ")"));
  };
  if (n <= 64) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) check_triple(a, b, c);
  } else {
    std::mt19937 rng(0x5eed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    long long samples = 10LL * n * n;
    for (long long i = 0; i < samples; ++i)
      check_triple(pick(rng), pick(rng), pick(rng));
  }
}

int FiniteGroup::power(int g, long long n) const {
  if (g < 0 || g >= order_) throw std::invalid_argument("element out of range");
  int base = g;
  if (n < 0) {
    base = inverse_[g];
    n = -n;
  }
  int acc = 0;
  for (long long i = 0; i < n; ++i) acc = cayley_[acc][base];
  return acc;
}

int FiniteGroup::element_order(int g) const {
  if (g < 0 || g >= order_) throw std::invalid_argument("element out of range");
  int acc = g, k = 1;
  while (acc != 0) {
    acc = cayley_[acc][g];
    ++k;
  }
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order_; ++a)
    for (int b = a + 1; b < order_; ++b)
      if (cayley_[a][b] != cayley_[b][a]) return false;
  return true;
}

GroupPtr make_cyclic(int n) {
  if (n < 1) throw std::invalid_argument("cyclic group needs order >= 1");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> names(n);
  for (int a = 0; a < n; ++a) {
    names[a] = std::to_string(a);
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return std::make_shared<FiniteGroup>(std::move(t), std::move(names));
}

GroupPtr make_direct_product(const FiniteGroup& g1, const FiniteGroup& g2) {
  int n1 = g1.order(), n2 = g2.order(), n = n1 * n2;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> names(n);
  auto id = [n2](int a, int b) { return a * n2 + b; };
  for (int a1 = 0; a1 < n1; ++a1)
    for (int a2 = 0; a2 < n2; ++a2) {
      names[id(a1, a2)] = "(" + g1.name(a1) + "," + g2.name(a2) + ")";
      for (int b1 = 0; b1 < n1; ++b1)
        for (int b2 = 0; b2 < n2; ++b2)
          t[id(a1, a2)][id(b1, b2)] = id(g1.mul(a1, b1), g2.mul(a2, b2));
    }
  return std::make_shared<FiniteGroup>(std::move(t), std::move(names));
}

GroupPtr make_dihedral(int n) {
  if (n < 2) throw std::invalid_argument("dihedral group needs n >= 2");
  int m = 2 * n;
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  std::vector<std::string> names(m);
  auto modn = [n](int k) { return ((k % n) + n) % n; };
  for (int a = 0; a < n; ++a) {
    names[a] = a == 0 ? "e" : (a == 1 ? "r" : "r^" + std::to_string(a));
    names[n + a] = a == 0 ? "s" : "s*r^" + std::to_string(a);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      t[a][b] = modn(a + b);                  // r^a r^b
      t[a][n + b] = n + modn(b - a);          // r^a (s r^b) = s r^(b-a)
      t[n + a][b] = n + modn(a + b);          // (s r^a) r^b
      t[n + a][n + b] = modn(b - a);          // (s r^a)(s r^b) = r^(b-a)
    }
  return std::make_shared<FiniteGroup>(std::move(t), std::move(names));
}

namespace {

std::string cycle_name(const std::vector<int>& perm) {
  int n = static_cast<int>(perm.size());
  std::string out;
  std::vector<char> done(n, 0);
  for (int s = 0; s < n; ++s) {
    if (done[s] || perm[s] == s) continue;
    out += '(';
    int c = s;
    while (!done[c]) {
      done[c] = 1;
      out += std::to_string(c);
      c = perm[c];
    }
    out += ')';
  }
  return out.empty() ? "e" : out;
}

}  // namespace

GroupPtr make_symmetric(int n) {
  if (n < 1 || n > 5)
    throw std::invalid_argument("symmetric group supported for 1 <= n <= 5");
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  int m = static_cast<int>(perms.size());
  auto index_of = [&](const std::vector<int>& p) {
    return static_cast<int>(
        std::lower_bound(perms.begin(), perms.end(), p) - perms.begin());
  };
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  std::vector<std::string> names(m);
  std::vector<int> comp(n);
  for (int a = 0; a < m; ++a) {
    names[a] = cycle_name(perms[a]);
    for (int b = 0; b < m; ++b) {
      for (int x = 0; x < n; ++x) comp[x] = perms[a][perms[b][x]];
      t[a][b] = index_of(comp);
    }
  }
  return std::make_shared<FiniteGroup>(std::move(t), std::move(names));
}

Subgroup square_generated_subgroup(const GroupPtr& group, int g) {
  if (!group) throw std::invalid_argument("null group");
  if (g < 0 || g >= group->order())
    throw std::invalid_argument("element out of range");
  int sq = group->mul(g, g);
  std::vector<int> members{0};
  int acc = sq;
  while (acc != 0) {
    members.push_back(acc);
    acc = group->mul(acc, sq);
  }
  std::sort(members.begin(), members.end());
  return Subgroup{group, std::move(members)};
}

std::vector<std::vector<int>> right_cosets(const Subgroup& h) {
  const FiniteGroup& g = *h.parent;
  int n = g.order();
  std::vector<char> used(n, 0);
  std::vector<std::vector<int>> blocks;
  for (int rep = 0; rep < n; ++rep) {
    if (used[rep]) continue;
    std::vector<int> block;
    block.reserve(h.members.size());
    for (int m : h.members) {
      int x = g.mul(m, rep);
      used[x] = 1;
      block.push_back(x);
    }
    std::sort(block.begin(), block.end());
    blocks.push_back(std::move(block));
  }
  return blocks;  // reps scanned in increasing order; blocks sorted by minimum
}

bool check_automorphism(const FiniteGroup& group, const std::vector<int>& perm) {
  int n = group.order();
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("permutation length does not match group order");
  std::vector<char> seen(n, 0);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[v]++)
      throw std::invalid_argument("not a permutation of the group elements");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (perm[group.mul(a, b)] != group.mul(perm[a], perm[b])) return false;
  return true;
}

namespace {

GroupPtr parse_cayley_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  long declared = -1;
  std::vector<std::string> tokens;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> row;
    while (ls >> tok) row.push_back(tok);
    if (row.empty()) continue;
    if (first_content_line && row.size() >= 3 && row[0] == "|G|" &&
        row[1] == "=") {
      declared = std::stol(row[2]);
      first_content_line = false;
      continue;
    }
    first_content_line = false;
    tokens.insert(tokens.end(), row.begin(), row.end());
  }
  if (tokens.empty()) throw std::invalid_argument("empty cayley table file");

  size_t n;
  if (declared > 0) {
    n = static_cast<size_t>(declared);
  } else {
    // No header: n^2 tokens (bare table) or n^2 + n (names line first).
    // The two counts never coincide, so the shape is unambiguous.
    size_t t = tokens.size();
    size_t bare = static_cast<size_t>(std::sqrt(static_cast<double>(t)) + 0.5);
    size_t named = static_cast<size_t>(
        (std::sqrt(4.0 * static_cast<double>(t) + 1.0) - 1.0) / 2.0 + 0.5);
    if (bare * bare == t)
      n = bare;
    else if (named * named + named == t)
      n = named;
    else
      throw std::invalid_argument(
          "cayley table file is not an n x n table (token count " +
          std::to_string(t) + ")");
  }
  std::vector<std::string> names;
  size_t pos = 0;
  if (tokens.size() == n * n + n) {
    names.assign(tokens.begin(), tokens.begin() + n);
    pos = n;
  } else if (tokens.size() != n * n) {
    throw std::invalid_argument(
        "cayley table file should hold n*n ids plus an optional names line");
  }
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c) {
      const std::string& tok = tokens[pos++];
      size_t used = 0;
      int v;
      try {
        v = std::stoi(tok, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("cayley table entry is not an integer: " +
                                    tok);
      }
      if (used != tok.size())
        throw std::invalid_argument("cayley table entry is not an integer: " +
                                    tok);
      table[r][c] = v;
    }
  return std::make_shared<FiniteGroup>(std::move(table), std::move(names));
}

GroupPtr parse_atom(const std::string& atom) {
  if (atom.size() < 2)
    throw std::invalid_argument("bad group spec token: '" + atom + "'");
  char kind = atom[0];
  const std::string num = atom.substr(1);
  for (char c : num)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("bad group spec token: '" + atom + "'");
  int n = std::stoi(num);
  switch (kind) {
    case 'Z':
      return make_cyclic(n);
    case 'D':
      return make_dihedral(n);
    case 'S':
      return make_symmetric(n);
    default:
      throw std::invalid_argument("bad group spec token: '" + atom + "'");
  }
}

}  // namespace

GroupPtr parse_group_spec(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty group spec");
  if (text.rfind("@file:", 0) == 0) {
    std::string path = text.substr(6);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open cayley file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_cayley_text(buf.str());
  }
  std::vector<std::string> atoms;
  std::string cur;
  for (char c : text) {
    if (c == 'x') {
      atoms.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  atoms.push_back(cur);
  GroupPtr acc = parse_atom(atoms[0]);
  for (size_t i = 1; i < atoms.size(); ++i)
    acc = make_direct_product(*acc, *parse_atom(atoms[i]));
  return acc;
}

std::string render_cayley_table(const FiniteGroup& group) {
  std::ostringstream out;
  int n = group.order();
  out << "|G| = " << n << "\n";
  for (int i = 0; i < n; ++i) out << (i ? " " : "") << group.name(i);
  out << "\n";
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) out << (b ? " " : "") << group.mul(a, b);
    out << "\n";
  }
  return out.str();
}

bool same_structure(const FiniteGroup& a, const FiniteGroup& b) {
  return a.order() == b.order() && a.table() == b.table();
}

}  // namespace grf
