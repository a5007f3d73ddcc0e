#include "qport/connector.hpp"

#include <algorithm>
#include <map>

namespace qport {

MarkedCover replay(const MarkedCover& cover, std::span<const Move> word) {
  MarkedCover current = cover;
  for (const Move& m : word) current = apply_move(current, m);
  return current;
}

TranspositionWord reverse_word(std::span<const Move> word) {
  TranspositionWord out;
  out.reserve(word.size());
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    out.push_back(Move{it->swap, std::nullopt, it->tag, !it->inverse});
  }
  return out;
}

MarkedCover extend_cover(const MarkedCover& cover, std::span<const Extension> extension) {
  std::vector<std::pair<PointId, PointId>> map;
  map.reserve(cover.size() + extension.size());
  for (Index i = 0; i < cover.size(); ++i) map.emplace_back(cover.name(i), cover.name(cover.image(i)));
  for (const auto& e : extension) map.emplace_back(e.point, e.image);
  return MarkedCover(std::move(map), cover.critical_point(CriticalSlot::first),
                     cover.critical_point(CriticalSlot::second));
}

namespace {

bool has_fixed_pair_portrait(const MarkedCover& cover) {
  const Portrait p = derive_portrait(cover);
  return classify(p) == FeatureVector{TwoComponents{{0, 1}, {0, 1}}};
}

}  // namespace

Transported transport_word(const MarkedCover& fg, const MarkedCover& fh, std::span<const Move> word_h) {
  if (!has_fixed_pair_portrait(fg) || !has_fixed_pair_portrait(fh)) {
    throw CoverError("transport needs both covers reduced to two fixed critical points");
  }

  std::map<PointId, PointId> sigma;
  sigma.emplace(fh.critical_point(CriticalSlot::first), fg.critical_point(CriticalSlot::first));
  sigma.emplace(fh.critical_point(CriticalSlot::second), fg.critical_point(CriticalSlot::second));

  // Fresh names come from the reserved namespace, avoiding Fg and earlier copies.
  std::vector<std::pair<PointId, PointId>> grown;
  for (Index i = 0; i < fg.size(); ++i) grown.emplace_back(fg.name(i), fg.name(fg.image(i)));
  std::size_t counter = 0;
  auto next_fresh = [&] {
    for (;; ++counter) {
      PointId candidate("d" + std::to_string(counter));
      bool used = fg.contains(candidate) ||
                  std::any_of(sigma.begin(), sigma.end(), [&](const auto& kv) { return kv.second == candidate; });
      if (!used) return candidate;
    }
  };
  for (Index i = 0; i < fh.size(); ++i) {
    if (!fh.is_critical(i)) sigma.emplace(fh.name(i), next_fresh());
  }

  Transported out{fg, {}, {}};
  for (const auto& [h_name, g_name] : sigma) out.identification.pairs.emplace_back(h_name, g_name);
  for (Index i = 0; i < fh.size(); ++i) {
    if (fh.is_critical(i)) continue;
    out.identification.extension.push_back({sigma.at(fh.name(i)), sigma.at(fh.name(fh.image(i)))});
  }
  out.cover = extend_cover(fg, out.identification.extension);

  auto rename = [&](const PointId& p) {
    auto it = sigma.find(p);
    if (it == sigma.end()) throw CoverError("word mentions '" + p.str() + "', unknown to the h side");
    return it->second;
  };
  out.word.reserve(word_h.size());
  for (const Move& m : word_h) {
    Move renamed{{rename(m.swap.first), rename(m.swap.second)}, std::nullopt, m.tag, m.inverse};
    if (m.minted) renamed.minted = Mint{rename(m.minted->point), rename(m.minted->image)};
    out.word.push_back(std::move(renamed));
  }
  return out;
}

MarkedCover replay_certificate(const MarkedCover& g, const PathCertificate& cert) {
  if (cert.junction > cert.word.size()) throw CoverError("certificate junction out of range");
  const std::span<const Move> word(cert.word);
  MarkedCover at_junction = replay(g, word.first(cert.junction));
  return replay(extend_cover(at_junction, cert.identification.extension), word.subspan(cert.junction));
}

PathCertificate connect(const MarkedCover& g, const MarkedCover& h) {
  const ReductionTrace tg = reduce(g);
  const ReductionTrace th = reduce(h);
  const TranspositionWord word_h = th.word();
  Transported t = transport_word(tg.final_cover, th.final_cover, reverse_word(word_h));

  PathCertificate cert;
  cert.word = tg.word();
  cert.junction = cert.word.size();
  cert.word.insert(cert.word.end(), t.word.begin(), t.word.end());
  cert.identification = std::move(t.identification);

  const MarkedCover result = replay_certificate(g, cert);
  const Portrait reached = derive_portrait(result);
  cert.final_features = classify(reached);
  cert.verified = features_isomorphic(reached, derive_portrait(h));
  return cert;
}

bool verify_certificate(const MarkedCover& g, const MarkedCover& h, const PathCertificate& cert) {
  try {
    const MarkedCover result = replay_certificate(g, cert);
    const Portrait reached = derive_portrait(result);
    const Portrait target = derive_portrait(h);
    return canonical_encoding(classify(reached)) == canonical_encoding(cert.final_features) &&
           features_isomorphic(reached, target);
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace qport
