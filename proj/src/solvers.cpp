#include "pgl/solvers.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <utility>

#include "pgl/detail/half_enum.hpp"
#include "pgl/errors.hpp"

namespace pgl {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// The int64 kernels need headroom for 2*sum intermediates.
constexpr std::int64_t kInt64SafeTotal = std::numeric_limits<std::int64_t>::max() / 4;

bool fits_int64(const Int& total) { return total <= kInt64SafeTotal; }

template <class S>
S abs_of(const S& x) {
  return x < 0 ? S(-x) : x;
}

template <class S>
std::vector<S> scalar_weights(const Instance& instance);

template <>
std::vector<std::int64_t> scalar_weights<std::int64_t>(const Instance& instance) {
  std::vector<std::int64_t> w;
  w.reserve(instance.size());
  for (const Int& q : instance.weights()) w.push_back(q.convert_to<std::int64_t>());
  return w;
}

template <>
std::vector<Int> scalar_weights<Int>(const Instance& instance) {
  return instance.weights();
}

template <class S>
S scalar_total(const Instance& instance);

template <>
std::int64_t scalar_total<std::int64_t>(const Instance& instance) {
  return instance.total().convert_to<std::int64_t>();
}

template <>
Int scalar_total<Int>(const Instance& instance) {
  return instance.total();
}

SolveResult finish_from_canonical(const Instance& instance, SubsetAssignment witness,
                                  bool exact, SolveStats stats) {
  SolveResult result;
  result.witness = std::move(witness);
  const EnergyValue ev = energy(instance, result.witness);
  result.discrepancy = ev.discrepancy;
  result.optimal_energy = ev.energy;
  result.exact = exact;
  result.stats = stats;
  return result;
}

// ---------------------------------------------------------------- brute force

template <class S>
std::uint64_t brute_kernel(const std::vector<S>& w, const S& total) {
  S best_abs{};
  std::uint64_t best_mask = 0;
  bool first = true;
  detail::for_each_half_subset<S>(w, total, [&](std::uint64_t mask, const S& disc) {
    S a = abs_of(disc);
    if (first || a < best_abs || (a == best_abs && lex_less_mask(mask, best_mask))) {
      best_abs = std::move(a);
      best_mask = mask;
      first = false;
    }
  });
  return best_mask;
}

// ------------------------------------------------------------ meet in middle

template <class S>
struct HalfEntry {
  S sum;
  std::uint64_t mask;  // local to the half, bit t = index offset + t + 1
};

template <class S>
std::vector<HalfEntry<S>> subset_sums(const std::vector<S>& w, std::uint32_t offset,
                                      std::uint32_t count) {
  std::vector<HalfEntry<S>> list(1ull << count);
  list[0] = {S(0), 0};
  for (std::uint64_t g = 1; g < list.size(); ++g) {
    const unsigned b = static_cast<unsigned>(std::countr_zero(g));
    S sum = list[g & (g - 1)].sum;
    sum += w[offset + b];
    list[g] = {std::move(sum), g};
  }
  std::sort(list.begin(), list.end(), [](const HalfEntry<S>& a, const HalfEntry<S>& b) {
    if (a.sum != b.sum) return a.sum < b.sum;
    return a.mask < b.mask;
  });
  return list;
}

std::vector<std::uint32_t> indices_from_parts(
    std::initializer_list<std::pair<std::uint64_t, std::uint32_t>> parts) {
  std::vector<std::uint32_t> indices;
  for (auto [mask, offset] : parts) {
    while (mask != 0) {
      indices.push_back(offset + static_cast<unsigned>(std::countr_zero(mask)) + 1);
      mask &= mask - 1;
    }
  }
  std::sort(indices.begin(), indices.end());
  return indices;
}

// Keeps the lexicographically smallest canonical witness among the candidates
// a scan actually visits. Energies are compared on |disc| first, so the
// expensive materialization only happens on improvements and exact ties.
template <class S>
class WitnessTracker {
 public:
  explicit WitnessTracker(std::uint32_t n) : n_(n) {}

  bool would_accept(const S& abs_disc) const { return !has_best_ || !(best_abs_ < abs_disc); }

  void offer(const S& disc, std::vector<std::uint32_t> indices) {
    S a = abs_of(disc);
    if (indices.empty() || indices.front() != 1) {
      indices = SubsetAssignment::from_indices(std::move(indices)).complement_within(n_).indices();
    }
    if (has_best_ && a == best_abs_) {
      if (std::lexicographical_compare(indices.begin(), indices.end(), best_indices_.begin(),
                                       best_indices_.end())) {
        best_indices_ = std::move(indices);
      }
      return;
    }
    best_abs_ = std::move(a);
    best_indices_ = std::move(indices);
    has_best_ = true;
  }

  SubsetAssignment witness() const { return SubsetAssignment::from_indices(best_indices_); }

 private:
  std::uint32_t n_;
  bool has_best_ = false;
  S best_abs_{};
  std::vector<std::uint32_t> best_indices_;
};

template <class S>
SolveResult hs_impl(const Instance& instance, std::uint64_t peak) {
  const std::uint32_t n = instance.size();
  const std::uint32_t h1 = (n + 1) / 2;
  const std::uint32_t h2 = n - h1;
  const std::vector<S> w = scalar_weights<S>(instance);
  const S total = scalar_total<S>(instance);

  const auto start = Clock::now();
  const auto left = subset_sums<S>(w, 0, h1);
  const auto right = subset_sums<S>(w, h1, h2);

  WitnessTracker<S> tracker(n);
  std::uint64_t nodes = 0;
  auto consider = [&](std::size_t i, std::size_t j, const S& d) {
    ++nodes;
    if (!tracker.would_accept(abs_of(d))) return;
    tracker.offer(d, indices_from_parts({{left[i].mask, 0u}, {right[j].mask, h1}}));
  };

  std::ptrdiff_t j = static_cast<std::ptrdiff_t>(right.size()) - 1;
  for (std::size_t i = 0; i < left.size() && j >= 0; ++i) {
    while (j >= 0) {
      S s = left[i].sum;
      s += right[static_cast<std::size_t>(j)].sum;
      S d = s;
      d += s;
      d -= total;
      consider(i, static_cast<std::size_t>(j), d);
      if (d > 0) {
        --j;
      } else {
        break;
      }
    }
  }

  SolveStats stats;
  stats.nodes_expanded = nodes;
  stats.peak_list_size = peak;
  stats.elapsed_seconds = seconds_since(start);
  return finish_from_canonical(instance, tracker.witness(), /*exact=*/true, stats);
}

// -------------------------------------------------- four-list sorted streams

template <class S>
struct QuarterEntry {
  S sum;
  std::uint32_t mask;
};

template <class S>
std::vector<QuarterEntry<S>> quarter_sums(const std::vector<S>& w, std::uint32_t offset,
                                          std::uint32_t count) {
  std::vector<QuarterEntry<S>> list(1ull << count);
  list[0] = {S(0), 0};
  for (std::uint64_t g = 1; g < list.size(); ++g) {
    const unsigned b = static_cast<unsigned>(std::countr_zero(g));
    S sum = list[g & (g - 1)].sum;
    sum += w[offset + b];
    list[g] = {std::move(sum), static_cast<std::uint32_t>(g)};
  }
  std::sort(list.begin(), list.end(), [](const QuarterEntry<S>& a, const QuarterEntry<S>& b) {
    if (a.sum != b.sum) return a.sum < b.sum;
    return a.mask < b.mask;
  });
  return list;
}

// Streams the pairwise sums of two sorted quarter lists in sorted order with a
// heap of size |first list|.
template <class S, bool Ascending>
class PairStream {
 public:
  struct Node {
    S sum;
    std::uint32_t i, j;
  };

  PairStream(const std::vector<QuarterEntry<S>>& a, const std::vector<QuarterEntry<S>>& b)
      : a_(a), b_(b) {
    heap_.reserve(a.size());
    const std::uint32_t j0 = Ascending ? 0 : static_cast<std::uint32_t>(b.size()) - 1;
    for (std::uint64_t i = 0; i < a_.size(); ++i) {
      S s = a_[i].sum;
      s += b_[j0].sum;
      heap_.push_back(Node{std::move(s), static_cast<std::uint32_t>(i), j0});
    }
    std::make_heap(heap_.begin(), heap_.end(), Cmp{});
  }

  std::optional<Node> next() {
    if (heap_.empty()) return std::nullopt;
    std::pop_heap(heap_.begin(), heap_.end(), Cmp{});
    Node top = std::move(heap_.back());
    heap_.pop_back();
    const bool has_more = Ascending ? top.j + 1 < b_.size() : top.j > 0;
    if (has_more) {
      const std::uint32_t j = Ascending ? top.j + 1 : top.j - 1;
      S s = a_[top.i].sum;
      s += b_[j].sum;
      heap_.push_back(Node{std::move(s), top.i, j});
      std::push_heap(heap_.begin(), heap_.end(), Cmp{});
    }
    return top;
  }

 private:
  // Heap order is total (sum, i, j), so pop order is deterministic.
  struct Cmp {
    bool operator()(const Node& x, const Node& y) const {
      if (x.sum != y.sum) return Ascending ? x.sum > y.sum : x.sum < y.sum;
      if (x.i != y.i) return x.i > y.i;
      return x.j > y.j;
    }
  };

  const std::vector<QuarterEntry<S>>& a_;
  const std::vector<QuarterEntry<S>>& b_;
  std::vector<Node> heap_;
};

template <class S>
SolveResult ss_impl(const Instance& instance, std::uint64_t peak) {
  const std::uint32_t n = instance.size();
  const std::uint32_t h1 = (n + 1) / 2;
  const std::uint32_t h2 = n - h1;
  const std::uint32_t q1s = (h1 + 1) / 2;
  const std::uint32_t q2s = h1 - q1s;
  const std::uint32_t q3s = (h2 + 1) / 2;
  const std::uint32_t q4s = h2 - q3s;
  const std::vector<S> w = scalar_weights<S>(instance);
  const S total = scalar_total<S>(instance);

  const auto start = Clock::now();
  const auto quarter1 = quarter_sums<S>(w, 0, q1s);
  const auto quarter2 = quarter_sums<S>(w, q1s, q2s);
  const auto quarter3 = quarter_sums<S>(w, h1, q3s);
  const auto quarter4 = quarter_sums<S>(w, h1 + q3s, q4s);

  PairStream<S, true> ascending(quarter1, quarter2);
  PairStream<S, false> descending(quarter3, quarter4);

  WitnessTracker<S> tracker(n);
  std::uint64_t nodes = 0;

  auto a = ascending.next();
  auto b = descending.next();
  while (a && b) {
    S s = a->sum;
    s += b->sum;
    S d = s;
    d += s;
    d -= total;
    ++nodes;
    if (tracker.would_accept(abs_of(d))) {
      tracker.offer(d, indices_from_parts({{quarter1[a->i].mask, 0u},
                                           {quarter2[a->j].mask, q1s},
                                           {quarter3[b->i].mask, h1},
                                           {quarter4[b->j].mask, h1 + q3s}}));
    }
    if (d > 0) {
      b = descending.next();
    } else {
      a = ascending.next();
    }
  }

  SolveStats stats;
  stats.nodes_expanded = nodes;
  stats.peak_list_size = peak;
  stats.elapsed_seconds = seconds_since(start);
  return finish_from_canonical(instance, tracker.witness(), /*exact=*/true, stats);
}

// ------------------------------------------------------- differencing trees

struct MergeNode {
  std::uint32_t keep;   // child on the node's own side
  std::uint32_t other;  // child on the same or opposite side
  bool opposite;
};

SubsetAssignment color_tree(std::uint32_t n, const std::vector<MergeNode>& registry,
                            std::uint32_t root) {
  std::vector<std::int8_t> colors(n, 0);
  std::vector<std::pair<std::uint32_t, std::int8_t>> stack{{root, +1}};
  while (!stack.empty()) {
    auto [id, c] = stack.back();
    stack.pop_back();
    if (id < n) {
      colors[id] = c;
      continue;
    }
    const MergeNode& m = registry[id - n];
    stack.push_back({m.keep, c});
    stack.push_back({m.other, m.opposite ? static_cast<std::int8_t>(-c) : c});
  }
  std::vector<std::uint32_t> indices;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (colors[i] > 0) indices.push_back(i + 1);
  }
  return SubsetAssignment::from_indices(std::move(indices));
}

// ------------------------------------------------------------------------ KK

template <class S>
struct ValueNode {
  S value;
  std::uint32_t id;
};

// Pop order: largest value first, smaller id on equal values.
template <class S>
struct KkHeapCmp {
  bool operator()(const ValueNode<S>& a, const ValueNode<S>& b) const {
    if (a.value != b.value) return a.value < b.value;
    return a.id > b.id;
  }
};

template <class S>
std::pair<std::vector<MergeNode>, std::uint32_t> kk_kernel(const std::vector<S>& w) {
  const std::uint32_t n = static_cast<std::uint32_t>(w.size());
  std::priority_queue<ValueNode<S>, std::vector<ValueNode<S>>, KkHeapCmp<S>> heap;
  for (std::uint32_t i = 0; i < n; ++i) heap.push({w[i], i});
  std::vector<MergeNode> registry;
  registry.reserve(n);
  while (heap.size() > 1) {
    ValueNode<S> a = heap.top();
    heap.pop();
    ValueNode<S> b = heap.top();
    heap.pop();
    const std::uint32_t id = n + static_cast<std::uint32_t>(registry.size());
    registry.push_back({a.id, b.id, true});
    S v = a.value;
    v -= b.value;
    heap.push({std::move(v), id});
  }
  return {std::move(registry), heap.top().id};
}

// ----------------------------------------------------------------------- CKK

template <class S>
struct CkkEntry {
  S value;
  std::uint32_t id;
};

template <class S>
class CkkSearch {
 public:
  CkkSearch(std::uint32_t n, S parity_floor, const SolverBudget& budget)
      : n_(n), parity_floor_(std::move(parity_floor)), budget_(budget), start_(Clock::now()) {}

  void run(std::vector<CkkEntry<S>> list, S sum) {
    registry_.reserve(2 * n_);
    descend(std::move(list), std::move(sum));
  }

  bool budget_hit() const { return budget_hit_; }
  std::uint64_t leaves() const { return leaves_; }
  const std::vector<MergeNode>& best_registry() const { return best_registry_; }
  std::uint32_t best_root() const { return best_root_; }
  double elapsed() const { return seconds_since(start_); }

 private:
  void evaluate_leaf(const S& value, std::uint32_t root) {
    ++leaves_;
    if (!has_best_ || value < best_abs_) {
      best_abs_ = value;
      best_registry_ = registry_;
      best_root_ = root;
      has_best_ = true;
      if (!(parity_floor_ < best_abs_)) stop_ = true;  // optimum proven
    }
    if (budget_.max_nodes && leaves_ >= *budget_.max_nodes && !stop_) {
      stop_ = true;
      budget_hit_ = true;
    }
    if (budget_.max_seconds && (leaves_ & 0xff) == 0 && !stop_ &&
        seconds_since(start_) > *budget_.max_seconds) {
      stop_ = true;
      budget_hit_ = true;
    }
  }

  // Folds everything but the largest entry onto the opposite side; from a
  // state whose largest entry dominates the rest this is the exact optimum,
  // and it is also precisely how the differencing heuristic finishes.
  void settle(const std::vector<CkkEntry<S>>& list, const S& rest) {
    const std::size_t before = registry_.size();
    std::uint32_t acc = list[1].id;
    for (std::size_t t = 2; t < list.size(); ++t) {
      const std::uint32_t id = n_ + static_cast<std::uint32_t>(registry_.size());
      registry_.push_back({acc, list[t].id, false});
      acc = id;
    }
    const std::uint32_t root = n_ + static_cast<std::uint32_t>(registry_.size());
    registry_.push_back({list[0].id, acc, true});
    S value = list[0].value;
    value -= rest;
    evaluate_leaf(value, root);
    registry_.resize(before);
  }

  static std::vector<CkkEntry<S>> child_list(const std::vector<CkkEntry<S>>& list, S value,
                                             std::uint32_t id) {
    std::vector<CkkEntry<S>> child;
    child.reserve(list.size() - 1);
    // Keep sorted by value descending, id ascending on equal values.
    std::size_t t = 2;
    while (t < list.size() &&
           (list[t].value > value || (list[t].value == value && list[t].id < id))) {
      child.push_back(list[t]);
      ++t;
    }
    child.push_back({std::move(value), id});
    for (; t < list.size(); ++t) child.push_back(list[t]);
    return child;
  }

  void descend(std::vector<CkkEntry<S>> list, S sum) {
    if (stop_) return;
    if (list.size() == 1) {
      evaluate_leaf(list[0].value, list[0].id);
      return;
    }
    S rest = sum;
    rest -= list[0].value;
    if (!(list[0].value < rest)) {
      settle(list, rest);
      return;
    }

    const S& a = list[0].value;
    const S& b = list[1].value;
    const std::uint32_t id = n_ + static_cast<std::uint32_t>(registry_.size());

    {  // difference branch first: the greedy dive reproduces the heuristic
      S v = a;
      v -= b;
      S child_sum = sum;
      child_sum -= b;
      child_sum -= b;
      registry_.push_back({list[0].id, list[1].id, true});
      descend(child_list(list, std::move(v), id), std::move(child_sum));
      registry_.pop_back();
    }
    if (stop_) return;

    {  // union branch, pruned when its settled completion cannot improve
      S v = a;
      v += b;
      S other = sum;
      other -= v;
      if (!(v < other)) {
        S settled = v;
        settled -= other;
        if (has_best_ && !(settled < best_abs_)) return;
      }
      registry_.push_back({list[0].id, list[1].id, false});
      descend(child_list(list, std::move(v), id), std::move(sum));
      registry_.pop_back();
    }
  }

  std::uint32_t n_;
  S parity_floor_;
  SolverBudget budget_;
  Clock::time_point start_;
  std::vector<MergeNode> registry_;
  std::vector<MergeNode> best_registry_;
  std::uint32_t best_root_ = 0;
  S best_abs_{};
  bool has_best_ = false;
  bool stop_ = false;
  bool budget_hit_ = false;
  std::uint64_t leaves_ = 0;
};

template <class S>
SolveResult ckk_impl(const Instance& instance, const SolverBudget& budget) {
  const std::uint32_t n = instance.size();
  const std::vector<S> w = scalar_weights<S>(instance);
  const S total = scalar_total<S>(instance);
  S parity = total;
  parity %= 2;

  std::vector<CkkEntry<S>> list;
  list.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) list.push_back({w[i], i});
  std::sort(list.begin(), list.end(), [](const CkkEntry<S>& x, const CkkEntry<S>& y) {
    if (x.value != y.value) return x.value > y.value;
    return x.id < y.id;
  });

  CkkSearch<S> search(n, std::move(parity), budget);
  search.run(std::move(list), S(total));

  SolveStats stats;
  stats.nodes_expanded = search.leaves();
  stats.peak_list_size = n;
  stats.elapsed_seconds = search.elapsed();
  SubsetAssignment witness =
      color_tree(n, search.best_registry(), search.best_root()).canonical_within(n);
  return finish_from_canonical(instance, std::move(witness), !search.budget_hit(), stats);
}

std::uint64_t checked_list_bytes(std::uint64_t elements, std::size_t entry_bytes,
                                 const SolverCaps& caps, const char* solver) {
  const std::uint64_t bytes = elements * entry_bytes;
  if (bytes > caps.max_memory_bytes) {
    throw CapRefusalError(std::string(solver) + " would need about " + std::to_string(bytes) +
                          " bytes of lists, over the cap of " +
                          std::to_string(caps.max_memory_bytes));
  }
  return elements;
}

}  // namespace

SolveResult solve_brute_force(const Instance& instance, const SolverCaps& caps) {
  const std::uint32_t n = instance.size();
  // 64 is structural (subsets walk a 64-bit mask), the cap is policy.
  const std::uint32_t limit = std::min(caps.brute_force_cap, 64u);
  if (n > limit) {
    throw CapRefusalError("brute force is capped at N <= " + std::to_string(limit) +
                          " (instance has N = " + std::to_string(n) + ")");
  }
  const auto start = Clock::now();
  std::uint64_t mask;
  if (fits_int64(instance.total())) {
    mask = brute_kernel<std::int64_t>(scalar_weights<std::int64_t>(instance),
                                      scalar_total<std::int64_t>(instance));
  } else {
    mask = brute_kernel<Int>(instance.weights(), instance.total());
  }
  SolveStats stats;
  stats.nodes_expanded = 1ull << (n - 1);
  stats.peak_list_size = 0;
  stats.elapsed_seconds = seconds_since(start);
  return finish_from_canonical(instance, SubsetAssignment::from_mask(mask), /*exact=*/true, stats);
}

SolveResult solve_horowitz_sahni(const Instance& instance, const SolverCaps& caps) {
  const std::uint32_t n = instance.size();
  if (n > 64) {
    throw CapRefusalError("meet in the middle is limited to N <= 64");
  }
  const std::uint32_t h1 = (n + 1) / 2;
  const std::uint32_t h2 = n - h1;
  const bool narrow = fits_int64(instance.total());
  const std::size_t entry = narrow ? sizeof(HalfEntry<std::int64_t>) : sizeof(HalfEntry<Int>) + 32;
  const std::uint64_t peak =
      checked_list_bytes((1ull << h1) + (1ull << h2), entry, caps, "horowitz-sahni");
  return narrow ? hs_impl<std::int64_t>(instance, peak) : hs_impl<Int>(instance, peak);
}

SolveResult solve_schroeppel_shamir(const Instance& instance, const SolverCaps& caps) {
  const std::uint32_t n = instance.size();
  if (n < 4) return solve_brute_force(instance, caps);
  if (n > 128) {
    throw CapRefusalError("four-list search is limited to N <= 128");
  }
  const std::uint32_t h1 = (n + 1) / 2;
  const std::uint32_t h2 = n - h1;
  const std::uint32_t q1s = (h1 + 1) / 2;
  const std::uint32_t q3s = (h2 + 1) / 2;
  const std::uint64_t lists = (1ull << q1s) + (1ull << (h1 - q1s)) + (1ull << q3s) +
                              (1ull << (h2 - q3s));
  const std::uint64_t heaps = (1ull << q1s) + (1ull << q3s);
  const bool narrow = fits_int64(instance.total());
  const std::size_t entry =
      narrow ? sizeof(QuarterEntry<std::int64_t>) : sizeof(QuarterEntry<Int>) + 32;
  const std::uint64_t peak = checked_list_bytes(lists + heaps, entry, caps, "schroeppel-shamir");
  return narrow ? ss_impl<std::int64_t>(instance, peak) : ss_impl<Int>(instance, peak);
}

SolveResult solve_kk(const Instance& instance) {
  const std::uint32_t n = instance.size();
  const auto start = Clock::now();
  std::vector<MergeNode> registry;
  std::uint32_t root;
  if (fits_int64(instance.total())) {
    auto [r, top] = kk_kernel<std::int64_t>(scalar_weights<std::int64_t>(instance));
    registry = std::move(r);
    root = top;
  } else {
    auto [r, top] = kk_kernel<Int>(instance.weights());
    registry = std::move(r);
    root = top;
  }
  SolveStats stats;
  stats.nodes_expanded = n - 1;
  stats.peak_list_size = n;
  stats.elapsed_seconds = seconds_since(start);
  SubsetAssignment witness = color_tree(n, registry, root).canonical_within(n);
  return finish_from_canonical(instance, std::move(witness), /*exact=*/false, stats);
}

SolveResult solve_ckk(const Instance& instance, const SolverBudget& budget) {
  if (fits_int64(instance.total())) return ckk_impl<std::int64_t>(instance, budget);
  return ckk_impl<Int>(instance, budget);
}

bool is_solver_name(std::string_view name) {
  for (const char* known : kSolverNames) {
    if (name == known) return true;
  }
  return false;
}

SolveResult solve_by_name(std::string_view name, const Instance& instance,
                          const SolverBudget& budget, const SolverCaps& caps) {
  if (name == "brute") return solve_brute_force(instance, caps);
  if (name == "hs") return solve_horowitz_sahni(instance, caps);
  if (name == "ss") return solve_schroeppel_shamir(instance, caps);
  if (name == "kk") return solve_kk(instance);
  if (name == "ckk") return solve_ckk(instance, budget);
  throw ValidationError("unknown solver '" + std::string(name) +
                        "'; expected brute, hs, ss, kk, or ckk");
}

}  // namespace pgl
