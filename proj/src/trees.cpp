#include "morse/trees.hpp"

#include "morse/errors.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>

namespace morse {

MorseTree make_morse_tree(unsigned n, std::vector<MorseTree::Edge> edges) {
  for (auto& [a, b] : edges) {
    if (a > b) {
      std::swap(a, b);
    }
  }
  std::sort(edges.begin(), edges.end());
  return MorseTree{n, std::move(edges)};
}

bool validate_morse_tree(const MorseTree& t) {
  const unsigned m = t.vertex_count();
  if (t.edges.size() != m - 1) {
    return false;
  }
  std::vector<std::vector<unsigned>> adj(m);
  std::vector<unsigned> parent(m);
  std::iota(parent.begin(), parent.end(), 0u);
  const std::function<unsigned(unsigned)> find = [&](unsigned v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (const auto& [a, b] : t.edges) {
    if (a >= m || b >= m || a == b) {
      return false;
    }
    const unsigned ra = find(a);
    const unsigned rb = find(b);
    if (ra == rb) {
      return false;  // cycle or repeated edge
    }
    parent[ra] = rb;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  // m - 1 edges without a cycle: the graph is a spanning tree.
  for (unsigned v = 0; v < m; ++v) {
    const auto& nb = adj[v];
    if (nb.size() == 1) {
      continue;
    }
    if (nb.size() != 3) {
      return false;
    }
    const auto [lo, hi] = std::minmax_element(nb.begin(), nb.end());
    if (!(*lo < v && v < *hi)) {
      return false;
    }
  }
  return true;
}

std::string to_string(const MorseTree& t) {
  std::ostringstream out;
  out << "n=" << t.n << '\n';
  for (const auto& [a, b] : t.edges) {
    out << a << '-' << b << '\n';
  }
  return out.str();
}

namespace {

unsigned parse_number(std::string_view s, std::string_view context) {
  unsigned v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("expected a non-negative integer in '" + std::string(context) + "'");
  }
  return v;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    if (!line.empty()) {
      lines.push_back(line);
    }
    if (nl == std::string_view::npos) {
      break;
    }
    text.remove_prefix(nl + 1);
  }
  return lines;
}

} // namespace

MorseTree parse_morse_tree(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || !lines.front().starts_with("n=")) {
    throw ParseError("Morse tree must start with 'n=<int>'");
  }
  const unsigned n = parse_number(lines.front().substr(2), lines.front());
  std::vector<MorseTree::Edge> edges;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto dash = lines[i].find('-');
    if (dash == std::string_view::npos) {
      throw ParseError("expected an edge 'a-b', got '" + std::string(lines[i]) + "'");
    }
    edges.emplace_back(parse_number(lines[i].substr(0, dash), lines[i]),
                       parse_number(lines[i].substr(dash + 1), lines[i]));
  }
  return make_morse_tree(n, std::move(edges));
}

std::vector<MorseTree::Edge> tree_from_prufer(const std::vector<unsigned>& seq) {
  const auto m = static_cast<unsigned>(seq.size() + 2);
  std::vector<unsigned> degree(m, 1);
  for (unsigned s : seq) {
    ++degree.at(s);
  }
  std::priority_queue<unsigned, std::vector<unsigned>, std::greater<>> leaves;
  for (unsigned v = 0; v < m; ++v) {
    if (degree[v] == 1) {
      leaves.push(v);
    }
  }
  std::vector<MorseTree::Edge> edges;
  edges.reserve(m - 1);
  for (unsigned s : seq) {
    const unsigned leaf = leaves.top();
    leaves.pop();
    edges.emplace_back(std::min(leaf, s), std::max(leaf, s));
    if (--degree[s] == 1) {
      leaves.push(s);
    }
  }
  const unsigned a = leaves.top();
  leaves.pop();
  const unsigned b = leaves.top();
  edges.emplace_back(std::min(a, b), std::max(a, b));
  return edges;
}

std::vector<MorseTree> enumerate_morse_trees(unsigned n, bool extended) {
  const unsigned budget = extended ? kMorseOracleExtendedBudget : kMorseOracleBudget;
  if (n > budget) {
    throw BudgetError("Morse tree enumeration is limited to n <= " + std::to_string(budget) +
                      (extended ? "" : " (n <= 4 with the extended budget)") + "; got n=" +
                      std::to_string(n));
  }
  const unsigned m = 2 * n + 2;
  std::vector<MorseTree> out;
  // Choose the node set as a bitmask of n labels out of m.
  std::vector<bool> chosen(m, false);
  std::fill(chosen.begin(), chosen.begin() + n, true);
  do {
    std::vector<unsigned> word;
    for (unsigned v = 0; v < m; ++v) {
      if (chosen[v]) {
        word.push_back(v);
        word.push_back(v);
      }
    }
    // word is sorted, so next_permutation visits every distinct arrangement.
    do {
      MorseTree t = make_morse_tree(n, tree_from_prufer(word));
      if (validate_morse_tree(t)) {
        out.push_back(std::move(t));
      }
    } while (std::next_permutation(word.begin(), word.end()));
  } while (std::prev_permutation(chosen.begin(), chosen.end()));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

class PtptBuilder {
public:
  static Ptpt make(std::vector<std::vector<unsigned>> children) {
    Ptpt p;
    p.children_ = std::move(children);
    return p;
  }
};

Ptpt Ptpt::parse(std::string_view text) {
  std::vector<std::vector<unsigned>> children;
  std::vector<unsigned> stack;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') {
      if (stack.empty() && !children.empty()) {
        throw ParseError("PTPT has more than one root: '" + std::string(text) + "'");
      }
      const auto id = static_cast<unsigned>(children.size());
      if (!stack.empty()) {
        children[stack.back()].push_back(id);
      }
      children.emplace_back();
      stack.push_back(id);
    } else if (text[i] == ')') {
      if (stack.empty()) {
        throw ParseError("unbalanced PTPT string '" + std::string(text) + "'");
      }
      stack.pop_back();
    } else {
      throw ParseError("unexpected character in PTPT string '" + std::string(text) + "'");
    }
  }
  if (!stack.empty() || children.empty()) {
    throw ParseError("unbalanced PTPT string '" + std::string(text) + "'");
  }
  if (children[0].size() != 1) {
    throw ParseError("PTPT root must have exactly one child: '" + std::string(text) + "'");
  }
  for (std::size_t v = 1; v < children.size(); ++v) {
    if (children[v].size() != 0 && children[v].size() != 2) {
      throw ParseError("PTPT vertex with " + std::to_string(children[v].size()) +
                       " children: '" + std::string(text) + "'");
    }
  }
  return PtptBuilder::make(std::move(children));
}

std::string Ptpt::to_string() const {
  std::string out;
  const std::function<void(unsigned)> emit = [&](unsigned v) {
    out += '(';
    for (unsigned c : children_[v]) {
      emit(c);
    }
    out += ')';
  };
  emit(0);
  return out;
}

std::vector<Ptpt> enumerate_ptpt(unsigned n) {
  if (n > kPtptBudget) {
    throw BudgetError("PTPT enumeration is limited to n <= " + std::to_string(kPtptBudget) +
                      "; got n=" + std::to_string(n));
  }
  // shapes[k]: encodings of the subtrees hanging below the root with k nodes.
  std::vector<std::vector<std::string>> shapes(n + 1);
  shapes[0] = {"()"};
  for (unsigned k = 1; k <= n; ++k) {
    for (unsigned left = 0; left < k; ++left) {
      for (const auto& l : shapes[left]) {
        for (const auto& r : shapes[k - 1 - left]) {
          shapes[k].push_back("(" + l + r + ")");
        }
      }
    }
  }
  std::sort(shapes[n].begin(), shapes[n].end());
  std::vector<Ptpt> out;
  out.reserve(shapes[n].size());
  for (const auto& s : shapes[n]) {
    out.push_back(Ptpt::parse("(" + s + ")"));
  }
  return out;
}

std::vector<unsigned> walk_labels(const Ptpt& p) {
  std::vector<unsigned> label(p.vertex_count(), 0);
  unsigned next = 1;
  std::vector<unsigned> stack(p.children(0).rbegin(), p.children(0).rend());
  while (!stack.empty()) {
    const unsigned v = stack.back();
    stack.pop_back();
    label[v] = next++;
    const auto& c = p.children(v);
    stack.insert(stack.end(), c.rbegin(), c.rend());
  }
  return label;
}

std::string to_string(const EncodedPair& pair) {
  std::string out = pair.tree.to_string() + "\nφ =";
  for (unsigned v : pair.perm) {
    out += ' ' + std::to_string(v);
  }
  out += '\n';
  return out;
}

EncodedPair parse_encoded_pair(std::string_view text) {
  const auto lines = split_lines(text);
  constexpr std::string_view prefix = "φ =";
  if (lines.size() != 2 || !lines[1].starts_with(prefix)) {
    throw ParseError("encoded pair must be a PTPT line followed by 'φ = ...'");
  }
  Ptpt tree = Ptpt::parse(lines[0]);
  std::vector<unsigned> perm;
  std::istringstream in{std::string(lines[1].substr(prefix.size()))};
  std::string word;
  while (in >> word) {
    perm.push_back(parse_number(word, lines[1]));
  }
  return EncodedPair{std::move(tree), std::move(perm)};
}

EncodedPair encode(const MorseTree& t) {
  if (!validate_morse_tree(t)) {
    throw DomainError("encode() needs a valid Morse tree");
  }
  const unsigned m = t.vertex_count();
  std::vector<std::vector<unsigned>> adj(m);
  for (const auto& [a, b] : t.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }

  // Minimum label of each subtree when the tree hangs from label 0.
  std::vector<unsigned> subtree_min(m);
  const std::function<unsigned(unsigned, unsigned)> fill_min = [&](unsigned v, unsigned from) {
    unsigned lo = v;
    for (unsigned c : adj[v]) {
      if (c != from) {
        lo = std::min(lo, fill_min(c, v));
      }
    }
    return subtree_min[v] = lo;
  };
  fill_min(0, m);

  std::vector<std::vector<unsigned>> children;
  std::vector<unsigned> morse_label;
  const std::function<unsigned(unsigned, unsigned)> plant = [&](unsigned v, unsigned from) {
    const auto id = static_cast<unsigned>(children.size());
    children.emplace_back();
    morse_label.push_back(v);
    std::vector<unsigned> below;
    for (unsigned c : adj[v]) {
      if (c != from) {
        below.push_back(c);
      }
    }
    std::sort(below.begin(), below.end(),
              [&](unsigned a, unsigned b) { return subtree_min[a] < subtree_min[b]; });
    for (unsigned c : below) {
      const unsigned child_id = plant(c, v);
      children[id].push_back(child_id);
    }
    return id;
  };
  plant(0, m);

  EncodedPair pair{PtptBuilder::make(std::move(children)), std::vector<unsigned>(m - 1)};
  const auto walk = walk_labels(pair.tree);
  for (unsigned v = 1; v < m; ++v) {
    pair.perm[walk[v] - 1] = morse_label[v];
  }
  return pair;
}

MorseTree decode(const EncodedPair& pair) {
  const auto m = static_cast<unsigned>(pair.tree.vertex_count());
  if (pair.perm.size() + 1 != m) {
    throw NotInImageError("permutation has " + std::to_string(pair.perm.size()) +
                          " entries, shape needs " + std::to_string(m - 1));
  }
  std::vector<bool> seen(m, false);
  for (unsigned v : pair.perm) {
    if (v == 0 || v >= m || seen[v]) {
      throw NotInImageError("φ is not a permutation of 1.." + std::to_string(m - 1));
    }
    seen[v] = true;
  }
  const auto walk = walk_labels(pair.tree);
  std::vector<unsigned> label(m, 0);
  for (unsigned v = 1; v < m; ++v) {
    label[v] = pair.perm[walk[v] - 1];
  }
  std::vector<MorseTree::Edge> edges;
  for (unsigned v = 0; v < m; ++v) {
    for (unsigned c : pair.tree.children(v)) {
      edges.emplace_back(label[v], label[c]);
    }
  }
  MorseTree t = make_morse_tree(pair.tree.n(), std::move(edges));
  if (!validate_morse_tree(t)) {
    throw NotInImageError("labels do not form a Morse tree");
  }
  if (encode(t) != pair) {
    throw NotInImageError("planar order is not the canonical one for this Morse tree");
  }
  return t;
}

} // namespace morse
