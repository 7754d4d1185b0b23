#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace morse {

/// Labeled tree on vertices 0 ... 2n+1. A Morse tree additionally has every
/// vertex of degree 1 or 3, and every degree-3 vertex (a node) has both a
/// lower- and a higher-labeled neighbor.
///
/// Edges are stored as (a, b) with a < b, sorted. The struct can hold any
/// candidate graph; validate_morse_tree() decides whether it is a Morse tree.
struct MorseTree {
  using Edge = std::pair<unsigned, unsigned>;

  unsigned n = 0;
  std::vector<Edge> edges;

  unsigned vertex_count() const { return 2 * n + 2; }

  friend auto operator<=>(const MorseTree&, const MorseTree&) = default;
};

/// Builds a candidate with normalized edge order. Does not validate.
MorseTree make_morse_tree(unsigned n, std::vector<MorseTree::Edge> edges);

bool validate_morse_tree(const MorseTree& t);

/// "n=<n>" followed by one "a-b" line per edge, ascending by (a, b).
std::string to_string(const MorseTree& t);
MorseTree parse_morse_tree(std::string_view text);

/// Largest n enumerate_morse_trees() accepts by default, and with the
/// extended budget.
inline constexpr unsigned kMorseOracleBudget = 3;
inline constexpr unsigned kMorseOracleExtendedBudget = 4;

/// Labeled tree on m = seq.size() + 2 vertices with the given Prüfer word.
std::vector<MorseTree::Edge> tree_from_prufer(const std::vector<unsigned>& seq);

/// Every Morse tree with 2n+2 vertices, sorted. Walks the Prüfer words in
/// which a chosen set of n labels appears exactly twice and nothing else
/// appears (exactly the trees with n vertices of degree 3 and the rest
/// leaves), then keeps those passing validate_morse_tree().
/// Throws BudgetError above the budget.
std::vector<MorseTree> enumerate_morse_trees(unsigned n, bool extended = false);

/// Planted trivalent planar tree: vertex 0 is the root with exactly one
/// child; every other vertex has zero or two ordered children. Vertex ids
/// are always the preorder (first-child-first) numbering, so structural
/// equality is shape equality.
class Ptpt {
public:
  /// Parses the balanced-parenthesis form produced by to_string(): each
  /// vertex is "(" followed by its children's encodings and ")".
  /// The single-edge tree is "(())". Throws ParseError.
  static Ptpt parse(std::string_view text);

  unsigned n() const { return static_cast<unsigned>(children_.size() / 2 - 1); }
  std::size_t vertex_count() const { return children_.size(); }
  const std::vector<unsigned>& children(unsigned v) const { return children_.at(v); }

  std::string to_string() const;

  friend auto operator<=>(const Ptpt&, const Ptpt&) = default;

private:
  friend class PtptBuilder;
  std::vector<std::vector<unsigned>> children_;
};

/// All shapes with 2n+2 vertices (there are catalan(n) of them), sorted by
/// their string form. Throws BudgetError for n > 8.
inline constexpr unsigned kPtptBudget = 8;
std::vector<Ptpt> enumerate_ptpt(unsigned n);

/// Labels of the non-root vertices in the order a walk around the boundary
/// of the planar tree first meets them: preorder from the root's child,
/// first child before second. Element v is the label of vertex v; element 0
/// (the root) is 0. The labels of vertices 1.. form {1, ..., 2n+1}.
std::vector<unsigned> walk_labels(const Ptpt& p);

/// Image of a Morse tree under the injection into shapes x permutations.
/// perm[i - 1] is the Morse label of the vertex with walk label i.
struct EncodedPair {
  Ptpt tree;
  std::vector<unsigned> perm;

  friend auto operator<=>(const EncodedPair&, const EncodedPair&) = default;
};

/// Two lines: the balanced form of the shape, then "φ = p1 p2 ...".
std::string to_string(const EncodedPair& pair);
EncodedPair parse_encoded_pair(std::string_view text);

/// Plants the tree at label 0, orders the two children of every node by
/// ascending minimum label of their subtrees, and reads the permutation off
/// the walk labels. Throws DomainError if `t` is not a Morse tree.
EncodedPair encode(const MorseTree& t);

/// Inverse of encode(). Throws NotInImageError if the pair is malformed,
/// does not yield a Morse tree, or is not the canonical planar form of the
/// tree it yields.
MorseTree decode(const EncodedPair& pair);

} // namespace morse
