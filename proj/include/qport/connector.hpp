#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qport/cover.hpp"
#include "qport/features.hpp"
#include "qport/reducer.hpp"

namespace qport {

/// Folds apply_move over `word`. Throws CoverError/MoveError when an operand
/// is missing.
MarkedCover replay(const MarkedCover& cover, std::span<const Move> word);

/// The word undoing `word`: swaps in reverse order, mints dropped (minted
/// points stay in the marked set).
TranspositionWord reverse_word(std::span<const Move> word);

/// A point added at the junction, with its image.
struct Extension {
  PointId point;
  PointId image;
  friend bool operator==(const Extension&, const Extension&) = default;
};

/// How the reduced h-side cover is embedded into the reduced g-side cover.
struct Identification {
  std::vector<std::pair<PointId, PointId>> pairs;  ///< (h-side name, g-side name)
  std::vector<Extension> extension;                ///< points added to the g side
  friend bool operator==(const Identification&, const Identification&) = default;
};

/// Adds the extension points to `cover`. Every extension point must be new;
/// images may be existing or added points.
MarkedCover extend_cover(const MarkedCover& cover, std::span<const Extension> extension);

struct Transported {
  MarkedCover cover;  ///< Fg extended by copies of the non-portrait points of Fh
  TranspositionWord word;
  Identification identification;
};

/// Both covers must carry the two-fixed-points portrait. The first critical of
/// Fh goes to the first critical of Fg; other Fh points get fresh d<n> names.
Transported transport_word(const MarkedCover& fg, const MarkedCover& fh, std::span<const Move> word_h);

struct PathCertificate {
  TranspositionWord word;
  std::size_t junction = 0;  ///< moves before this index belong to the g side
  Identification identification;
  FeatureVector final_features;
  bool verified = false;
};

PathCertificate connect(const MarkedCover& g, const MarkedCover& h);

/// Replays the certificate on `g` and compares against the portrait of `h`.
/// Ignores cert.verified and returns false on any replay failure.
bool verify_certificate(const MarkedCover& g, const MarkedCover& h, const PathCertificate& cert);

/// Replays a certificate on `g` and returns the resulting cover.
MarkedCover replay_certificate(const MarkedCover& g, const PathCertificate& cert);

}  // namespace qport
