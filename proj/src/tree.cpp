#include "indseq/tree.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "indseq/rng.hpp"

namespace indseq {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

std::vector<std::vector<int>> adjacency(const Tree& t) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(t.n) + 1);
  for (auto [u, v] : t.edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  return adj;
}

}  // namespace

void validate_tree(const Tree& t) {
  if (t.n < 1) throw std::invalid_argument("tree: n must be positive");
  if (t.edges.size() != static_cast<std::size_t>(t.n) - 1)
    throw std::invalid_argument("tree: expected n-1 edges");
  UnionFind uf(t.n + 1);
  for (auto [u, v] : t.edges) {
    if (u < 1 || u > t.n || v < 1 || v > t.n)
      throw std::invalid_argument("tree: vertex out of range");
    if (u == v) throw std::invalid_argument("tree: self loop");
    if (!uf.unite(u, v)) throw std::invalid_argument("tree: cycle");
  }
  // n-1 merges without a cycle imply connectivity.
}

Tree prufer_decode(const PruferCode& code) {
  const int n = static_cast<int>(code.size()) + 2;
  for (int a : code)
    if (a < 1 || a > n) throw std::invalid_argument("prufer: symbol out of range");
  Tree t;
  t.n = n;
  t.edges.reserve(static_cast<std::size_t>(n) - 1);
  std::vector<int> deg(static_cast<std::size_t>(n) + 1, 1);
  for (int a : code) ++deg[static_cast<std::size_t>(a)];
  int ptr = 1;
  while (deg[static_cast<std::size_t>(ptr)] != 1) ++ptr;
  int leaf = ptr;
  for (int a : code) {
    t.edges.emplace_back(leaf, a);
    if (--deg[static_cast<std::size_t>(a)] == 1 && a < ptr) {
      leaf = a;
    } else {
      ++ptr;
      while (deg[static_cast<std::size_t>(ptr)] != 1) ++ptr;
      leaf = ptr;
    }
  }
  t.edges.emplace_back(leaf, n);
  return t;
}

PruferCode prufer_encode(const Tree& t) {
  validate_tree(t);
  if (t.n < 2) throw std::invalid_argument("prufer: need n >= 2");
  auto adj = adjacency(t);
  std::vector<int> deg(static_cast<std::size_t>(t.n) + 1, 0);
  std::vector<int> neighbor_xor(static_cast<std::size_t>(t.n) + 1, 0);
  for (auto [u, v] : t.edges) {
    ++deg[static_cast<std::size_t>(u)];
    ++deg[static_cast<std::size_t>(v)];
    neighbor_xor[static_cast<std::size_t>(u)] ^= v;
    neighbor_xor[static_cast<std::size_t>(v)] ^= u;
  }
  PruferCode code;
  code.reserve(static_cast<std::size_t>(t.n) - 2);
  int ptr = 1;
  while (deg[static_cast<std::size_t>(ptr)] != 1) ++ptr;
  int leaf = ptr;
  for (int step = 0; step < t.n - 2; ++step) {
    const int next = neighbor_xor[static_cast<std::size_t>(leaf)];
    code.push_back(next);
    neighbor_xor[static_cast<std::size_t>(next)] ^= leaf;
    if (--deg[static_cast<std::size_t>(next)] == 1 && next < ptr) {
      leaf = next;
    } else {
      ++ptr;
      while (deg[static_cast<std::size_t>(ptr)] != 1) ++ptr;
      leaf = ptr;
    }
  }
  return code;
}

Tree random_tree(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_tree: n must be positive");
  if (n == 1) return Tree{1, {}};
  SplitMix64 rng(seed);
  rng.next();
  PruferCode code(static_cast<std::size_t>(n) - 2);
  for (auto& a : code) a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n))) + 1;
  return prufer_decode(code);
}

std::vector<int> parents_from_tree(const Tree& t) {
  validate_tree(t);
  auto adj = adjacency(t);
  std::vector<int> order;       // BFS order, 1-based labels
  std::vector<int> pos(static_cast<std::size_t>(t.n) + 1, -1);
  std::vector<int> parent;      // parent position in `order`
  order.push_back(1);
  pos[1] = 0;
  parent.push_back(-1);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const int u = order[head];
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (pos[static_cast<std::size_t>(v)] >= 0) continue;
      pos[static_cast<std::size_t>(v)] = static_cast<int>(order.size());
      order.push_back(v);
      parent.push_back(static_cast<int>(head));
    }
  }
  return parent;
}

Tree tree_from_parents(std::span<const int> parent) {
  Tree t;
  t.n = static_cast<int>(parent.size());
  for (int v = 1; v < t.n; ++v) t.edges.emplace_back(parent[static_cast<std::size_t>(v)] + 1, v + 1);
  return t;
}

namespace {

// inc/exc polynomial DP over a parent-first order; T is the coefficient type.
template <typename T>
std::vector<T> independence_dp(std::span<const int> parent) {
  const std::size_t n = parent.size();
  std::vector<std::vector<T>> inc(n), exc(n);
  for (std::size_t v = 0; v < n; ++v) {
    inc[v] = {T(0), T(1)};
    exc[v] = {T(1)};
  }
  std::vector<T> tmp;
  auto convolve_into = [&tmp](std::vector<T>& a, const std::vector<T>& b) {
    tmp.assign(a.size() + b.size() - 1, T(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) tmp[i + j] += a[i] * b[j];
    }
    a.swap(tmp);
  };
  std::vector<T> both;
  for (std::size_t v = n; v-- > 1;) {
    const auto p = static_cast<std::size_t>(parent[v]);
    both.assign(std::max(inc[v].size(), exc[v].size()), T(0));
    for (std::size_t i = 0; i < inc[v].size(); ++i) both[i] += inc[v][i];
    for (std::size_t i = 0; i < exc[v].size(); ++i) both[i] += exc[v][i];
    convolve_into(inc[p], exc[v]);
    convolve_into(exc[p], both);
    inc[v].clear();
    inc[v].shrink_to_fit();
    exc[v].clear();
    exc[v].shrink_to_fit();
  }
  std::vector<T> out(std::max(inc[0].size(), exc[0].size()), T(0));
  for (std::size_t i = 0; i < inc[0].size(); ++i) out[i] += inc[0][i];
  for (std::size_t i = 0; i < exc[0].size(); ++i) out[i] += exc[0][i];
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

}  // namespace

void independence_counts_u64(std::span<const int> parent, std::vector<std::uint64_t>& out) {
  using u64 = std::uint64_t;
  const int n = static_cast<int>(parent.size());
  const int stride = n + 1;
  // Flat reusable buffers; this runs once per tree in exhaustive sweeps.
  thread_local std::vector<u64> inc, exc, both, tmp;
  thread_local std::vector<int> inc_len, exc_len;
  inc.resize(static_cast<std::size_t>(n) * stride);
  exc.resize(static_cast<std::size_t>(n) * stride);
  both.resize(static_cast<std::size_t>(stride) + 1);
  tmp.resize(2 * static_cast<std::size_t>(stride) + 2);
  inc_len.resize(static_cast<std::size_t>(n));
  exc_len.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    u64* iv = &inc[static_cast<std::size_t>(v) * stride];
    u64* ev = &exc[static_cast<std::size_t>(v) * stride];
    iv[0] = 0;
    iv[1] = 1;
    ev[0] = 1;
    inc_len[static_cast<std::size_t>(v)] = 2;
    exc_len[static_cast<std::size_t>(v)] = 1;
  }
  auto convolve_into = [&](u64* a, int& alen, const u64* b, int blen) {
    const int olen = alen + blen - 1;
    std::fill(tmp.begin(), tmp.begin() + olen, u64{0});
    for (int i = 0; i < alen; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < blen; ++j) tmp[static_cast<std::size_t>(i + j)] += a[i] * b[j];
    }
    std::copy(tmp.begin(), tmp.begin() + olen, a);
    alen = olen;
  };
  for (int v = n - 1; v >= 1; --v) {
    const int p = parent[static_cast<std::size_t>(v)];
    u64* iv = &inc[static_cast<std::size_t>(v) * stride];
    u64* ev = &exc[static_cast<std::size_t>(v) * stride];
    u64* ip = &inc[static_cast<std::size_t>(p) * stride];
    u64* ep = &exc[static_cast<std::size_t>(p) * stride];
    const int blen = std::max(inc_len[static_cast<std::size_t>(v)], exc_len[static_cast<std::size_t>(v)]);
    for (int i = 0; i < blen; ++i) {
      u64 s = 0;
      if (i < inc_len[static_cast<std::size_t>(v)]) s += iv[i];
      if (i < exc_len[static_cast<std::size_t>(v)]) s += ev[i];
      both[static_cast<std::size_t>(i)] = s;
    }
    convolve_into(ip, inc_len[static_cast<std::size_t>(p)], ev, exc_len[static_cast<std::size_t>(v)]);
    convolve_into(ep, exc_len[static_cast<std::size_t>(p)], both.data(), blen);
  }
  const int olen = std::max(inc_len[0], exc_len[0]);
  out.resize(static_cast<std::size_t>(olen));
  for (int i = 0; i < olen; ++i) {
    u64 s = 0;
    if (i < inc_len[0]) s += inc[static_cast<std::size_t>(i)];
    if (i < exc_len[0]) s += exc[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = s;
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
}

CountSequence independence_sequence_from_parents(std::span<const int> parent) {
  return CountSequence(independence_dp<BigInt>(parent));
}

CountSequence independence_sequence(const Tree& t) {
  auto parent = parents_from_tree(t);
  return independence_sequence_from_parents(parent);
}

RootedStats rooted_stats(std::span<const int> parent) {
  const std::size_t n = parent.size();
  constexpr int kInf = 1 << 28;
  thread_local std::vector<int> a_in, a_out, d_in, d_undom, dom_sum, dom_pen, d_dom;
  thread_local std::vector<char> matched;
  a_in.assign(n, 1);   // max independent set, vertex taken
  a_out.assign(n, 0);  // max independent set, vertex skipped
  matched.assign(n, 0);
  d_in.assign(n, 1);  // min maximal independent set, three rooted states
  d_undom.assign(n, 0);
  dom_sum.assign(n, 0);
  dom_pen.assign(n, kInf);
  d_dom.assign(n, kInf);
  RootedStats st;
  for (std::size_t v = n; v-- > 0;) {
    d_dom[v] = dom_pen[v] >= kInf ? kInf : dom_sum[v] + dom_pen[v];
    if (v == 0) break;
    const auto p = static_cast<std::size_t>(parent[v]);
    a_in[p] += a_out[v];
    a_out[p] += std::max(a_in[v], a_out[v]);
    if (!matched[v] && !matched[p]) {
      matched[v] = matched[p] = 1;
      ++st.mu;
    }
    d_in[p] = std::min(kInf, d_in[p] + std::min(d_dom[v], d_undom[v]));
    d_undom[p] = std::min(kInf, d_undom[p] + std::min(d_dom[v], kInf));
    const int m = std::min(d_in[v], d_dom[v]);
    dom_sum[p] = std::min(kInf, dom_sum[p] + m);
    dom_pen[p] = std::min(dom_pen[p], d_in[v] - m);
  }
  st.alpha = std::max(a_in[0], a_out[0]);
  st.min_maximal_is = std::min(d_in[0], d_dom[0]);
  return st;
}

TreeStats tree_stats(const Tree& t) {
  auto parent = parents_from_tree(t);
  auto rooted = rooted_stats(parent);
  TreeStats st{independence_sequence_from_parents(parent), rooted.alpha, rooted.mu,
               rooted.min_maximal_is};
  if (st.iseq.last_nonzero_index() != st.alpha)
    throw std::logic_error("tree_stats: alpha disagreement between DP routes");
  return st;
}

long count_extensions(const Tree& t, const std::vector<int>& independent_set) {
  validate_tree(t);
  std::vector<char> in_set(static_cast<std::size_t>(t.n) + 1, 0);
  for (int v : independent_set) {
    if (v < 1 || v > t.n) throw std::invalid_argument("count_extensions: vertex out of range");
    if (in_set[static_cast<std::size_t>(v)])
      throw std::invalid_argument("count_extensions: duplicate vertex");
    in_set[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<char> blocked = in_set;
  for (auto [u, v] : t.edges) {
    if (in_set[static_cast<std::size_t>(u)] && in_set[static_cast<std::size_t>(v)])
      throw std::invalid_argument("count_extensions: set is not independent");
    if (in_set[static_cast<std::size_t>(u)]) blocked[static_cast<std::size_t>(v)] = 1;
    if (in_set[static_cast<std::size_t>(v)]) blocked[static_cast<std::size_t>(u)] = 1;
  }
  long count = 0;
  for (int v = 1; v <= t.n; ++v)
    if (!blocked[static_cast<std::size_t>(v)]) ++count;
  return count;
}

Tree parse_tree_text(const std::string& text) {
  std::istringstream in(text);
  Tree t;
  if (!(in >> t.n)) throw std::invalid_argument("tree text: missing vertex count");
  int u = 0, v = 0;
  while (in >> u >> v) t.edges.emplace_back(u, v);
  validate_tree(t);
  return t;
}

std::string format_tree_text(const Tree& t) {
  std::ostringstream out;
  out << t.n << '\n';
  for (auto [u, v] : t.edges) out << u << ' ' << v << '\n';
  return out.str();
}

Tree parse_prufer_text(const std::string& text) {
  std::istringstream in(text);
  PruferCode code;
  int a = 0;
  while (in >> a) code.push_back(a);
  return prufer_decode(code);
}

}  // namespace indseq
