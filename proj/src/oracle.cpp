#include "qport/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

namespace qport {

std::optional<IsoWitness> brute_force_isomorphism(const Portrait& p, const Portrait& q) {
  if (p.size() != q.size()) return std::nullopt;
  const auto [p1, p2] = p.critical();
  const auto [q1, q2] = q.critical();
  const std::array<std::pair<Index, Index>, 2> pairings = {{{q1, q2}, {q2, q1}}};

  for (const auto& [to1, to2] : pairings) {
    std::vector<std::optional<Index>> eta(p.size()), inverse(q.size());
    std::vector<Index> queue;
    auto assign = [&](Index v, Index w) {
      if (eta[v]) return *eta[v] == w;
      if (inverse[w]) return false;
      eta[v] = w;
      inverse[w] = v;
      queue.push_back(v);
      return true;
    };
    bool ok = assign(p1, to1) && assign(p2, to2);
    for (std::size_t head = 0; ok && head < queue.size(); ++head) {
      const Index v = queue[head];
      ok = assign(p.next(v), q.next(*eta[v]));
    }
    if (!ok) continue;
    ok = std::all_of(eta.begin(), eta.end(), [](const auto& e) { return e.has_value(); });
    for (Index v = 0; ok && v < p.size(); ++v) ok = p.label(v) == q.label(*eta[v]);
    if (!ok) continue;

    IsoWitness witness;
    for (Index v = 0; v < p.size(); ++v) witness.bijection.emplace(p.name(v), q.name(*eta[v]));
    return witness;
  }
  return std::nullopt;
}

namespace {

// Labels in discovery order: the two critical points, then the orbit of the
// first, then the orbit of the second.
std::vector<Index> labeled_form(std::span<const Index> next, Index a, Index b) {
  constexpr Index unset = ~Index{0};
  std::vector<Index> label(next.size(), unset);
  std::vector<Index> order;
  auto visit = [&](Index v) {
    if (label[v] == unset) {
      label[v] = static_cast<Index>(order.size());
      order.push_back(v);
    }
  };
  visit(a);
  visit(b);
  std::vector<bool> walked(next.size(), false);
  for (Index start : {a, b}) {
    for (Index v = start; !walked[v]; v = next[v]) {
      walked[v] = true;
      visit(next[v]);
    }
  }
  std::vector<Index> form(order.size());
  for (Index i = 0; i < order.size(); ++i) form[i] = label[next[order[i]]];
  return form;
}

std::vector<Index> min_form(std::span<const Index> next, Index c1, Index c2) {
  return std::min(labeled_form(next, c1, c2), labeled_form(next, c2, c1));
}

MarkedCover cover_from_form(const std::vector<Index>& form) {
  std::vector<std::pair<PointId, PointId>> map;
  map.reserve(form.size());
  auto name = [](Index i) { return PointId("p" + std::to_string(i)); };
  for (Index i = 0; i < form.size(); ++i) map.emplace_back(name(i), name(form[i]));
  return MarkedCover(std::move(map), name(0), name(1));
}

// Every vertex on a critical orbit of (0, 1), label sums at most 2.
bool admissible(const std::vector<Index>& m) {
  const std::size_t s = m.size();
  std::uint32_t seen = 0;
  for (Index c : {Index{0}, Index{1}}) {
    for (Index v = c; !(seen >> v & 1U); v = m[v]) seen |= 1U << v;
  }
  if (seen != (1U << s) - 1) return false;
  std::array<int, 32> incoming{};
  for (Index u = 0; u < s; ++u) {
    incoming[m[u]] += u < 2 ? 2 : 1;
    if (incoming[m[u]] > 2) return false;
  }
  return true;
}

}  // namespace

std::vector<Index> propagation_form(const Portrait& p) {
  return min_form(p.next(), p.critical(CriticalSlot::first), p.critical(CriticalSlot::second));
}

std::vector<MarkedCover> enumerate_portraits(std::size_t max_vertices, unsigned threads) {
  if (max_vertices < 2) throw std::invalid_argument("enumeration needs at least 2 vertices");
  if (max_vertices > 10) throw std::invalid_argument("enumeration is limited to 10 vertices");
  threads = std::max(1U, threads);

  // Work items: (size, prefix m[0], m[1]); each walks the remaining odometer.
  struct Chunk {
    std::size_t size;
    Index m0, m1;
  };
  std::vector<Chunk> chunks;
  for (std::size_t s = 2; s <= max_vertices; ++s) {
    for (Index a = 0; a < s; ++a) {
      for (Index b = 0; b < s; ++b) chunks.push_back({s, a, b});
    }
  }

  using FormSet = std::set<std::vector<Index>>;
  std::vector<FormSet> found(threads);
  std::atomic<std::size_t> cursor{0};
  auto worker = [&](unsigned id) {
    for (std::size_t c; (c = cursor.fetch_add(1)) < chunks.size();) {
      const Chunk& chunk = chunks[c];
      std::vector<Index> m(chunk.size, 0);
      m[0] = chunk.m0;
      m[1] = chunk.m1;
      for (;;) {
        if (admissible(m)) found[id].insert(min_form(m, 0, 1));
        std::size_t pos = 2;
        while (pos < m.size() && ++m[pos] == m.size()) m[pos++] = 0;
        if (pos >= m.size()) break;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (auto& t : pool) t.join();

  FormSet all;
  for (auto& f : found) all.merge(f);
  std::vector<std::vector<Index>> forms(all.begin(), all.end());
  std::stable_sort(forms.begin(), forms.end(),
                   [](const auto& x, const auto& y) { return x.size() < y.size(); });

  std::vector<MarkedCover> out;
  out.reserve(forms.size());
  for (const auto& f : forms) out.push_back(cover_from_form(f));
  return out;
}

MarkedCover random_cover(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random cover needs at least 2 points");
  std::mt19937_64 rng(seed);
  for (;;) {
    const auto s = std::uniform_int_distribution<std::size_t>(2, n)(rng);
    std::uniform_int_distribution<Index> pick(0, static_cast<Index>(s - 1));
    std::vector<std::pair<PointId, PointId>> map;
    auto name = [](Index i) { return PointId("p" + std::to_string(i)); };
    for (Index i = 0; i < s; ++i) map.emplace_back(name(i), name(pick(rng)));
    const Index c1 = pick(rng);
    Index c2 = pick(rng);
    while (c2 == c1) c2 = pick(rng);
    MarkedCover cover(std::move(map), name(c1), name(c2));
    if (validate_cover(cover).pass()) return cover;
  }
}

namespace {

struct Builder {
  std::vector<Index> next;

  Index add(Index target) {
    next.push_back(target);
    return static_cast<Index>(next.size() - 1);
  }
  // Cycle of `length` new vertices; returns its first vertex.
  Index cycle(std::uint32_t length) {
    if (length == 0) throw std::invalid_argument("cycle length must be positive");
    const auto first = static_cast<Index>(next.size());
    for (std::uint32_t i = 0; i < length; ++i) add(first + (i + 1) % length);
    return first;
  }
  // Chain of `length` new vertices ending into `target`; returns its head.
  Index chain(std::uint32_t length, Index target) {
    if (length == 0) return target;
    const auto first = static_cast<Index>(next.size());
    for (std::uint32_t i = 0; i + 1 < length; ++i) add(first + i + 1);
    add(target);
    return first;
  }
  Index rho(std::uint32_t tail, std::uint32_t cycle_length) { return chain(tail, cycle(cycle_length)); }
  Index walk(Index v, std::size_t steps) const { return iterate(next, v, steps); }
};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

MarkedCover realize(const FeatureVector& fv) {
  Builder b;
  const auto [c1, c2] = std::visit(
      overloaded{
          [&](const TwoComponents& f) {
            Index a = b.rho(f.first.tail, f.first.cycle);
            return std::pair{a, b.rho(f.second.tail, f.second.cycle)};
          },
          [&](const OneCycle& f) {
            Index a = b.cycle(f.k1 + f.k2);
            return std::pair{a, b.walk(a, f.k1)};
          },
          [&](const OnePrePeriod& f) {
            Index a = b.rho(f.r, f.k1 + f.k2);
            return std::pair{a, b.walk(a, f.r + f.k1)};
          },
          [&](const DisjointPrePeriods& f) {
            Index a = b.rho(f.r1, f.k1 + f.k2);
            return std::pair{a, b.chain(f.r2, b.walk(a, f.r1 + f.k1))};
          },
          [&](const Intersecting& f) {
            Index a = b.rho(f.u1 + f.s, f.k);
            return std::pair{a, b.chain(f.u2, b.walk(a, f.u1))};
          },
          [&](const Contained& f) {
            if (f.r1 != f.r2 + f.q) throw std::invalid_argument("Contained needs r1 = r2 + q");
            Index a = b.rho(f.r1, f.k);
            return std::pair{a, b.walk(a, f.q)};
          },
      },
      fv);

  std::vector<std::pair<PointId, PointId>> map;
  auto name = [](Index i) { return PointId("p" + std::to_string(i)); };
  for (Index i = 0; i < b.next.size(); ++i) map.emplace_back(name(i), name(b.next[i]));
  return MarkedCover(std::move(map), name(c1), name(c2));
}

MarkedCover scramble(const MarkedCover& cover, std::mt19937_64& rng, bool swap_critical_order) {
  std::vector<Index> perm(cover.size());
  std::iota(perm.begin(), perm.end(), Index{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  auto name = [&](Index i) { return PointId("x" + std::to_string(perm[i])); };

  std::vector<std::pair<PointId, PointId>> map;
  for (Index i = 0; i < cover.size(); ++i) map.emplace_back(name(i), name(cover.image(i)));
  auto [c1, c2] = cover.critical();
  if (swap_critical_order) std::swap(c1, c2);
  return MarkedCover(std::move(map), name(c1), name(c2));
}

MarkedCover add_stray_points(const MarkedCover& cover, std::size_t count, std::mt19937_64& rng) {
  std::vector<std::pair<PointId, PointId>> map;
  std::vector<PointId> all(cover.points().begin(), cover.points().end());
  for (std::size_t i = 0; i < count; ++i) all.emplace_back("s" + std::to_string(i));
  for (Index i = 0; i < cover.size(); ++i) map.emplace_back(cover.name(i), cover.name(cover.image(i)));
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (std::size_t i = 0; i < count; ++i) map.emplace_back(all[cover.size() + i], all[pick(rng)]);
  return MarkedCover(std::move(map), cover.critical_point(CriticalSlot::first),
                     cover.critical_point(CriticalSlot::second));
}

}  // namespace qport
