#ifndef SMTKIT_ORIENTATION_H_
#define SMTKIT_ORIENTATION_H_

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "smtkit/alignment.h"

namespace smtkit {

enum class Orientation { kMonotone = 0, kSwap = 1, kDiscontinuous = 2 };
std::string_view to_string(Orientation orientation);

// "fe" conditions on the current unit only; bidirectional also counts the
// orientation of the following unit.
enum class MsdDirection { kForward, kBidirectional };
std::string_view to_string(MsdDirection direction);

struct MsdCounts {
  std::array<std::uint64_t, 3> counts{};

  std::uint64_t total() const { return counts[0] + counts[1] + counts[2]; }
  std::uint64_t& operator[](Orientation o) { return counts[static_cast<int>(o)]; }
  std::uint64_t operator[](Orientation o) const { return counts[static_cast<int>(o)]; }
  // All zeros for an empty table.
  std::array<double, 3> probabilities() const;
  MsdCounts& operator+=(const MsdCounts& other);
};

struct OrientationCounts {
  MsdDirection direction = MsdDirection::kForward;
  MsdCounts previous;
  // Only filled for kBidirectional.
  MsdCounts next;
  // Keyed by (foreign unit, target word) when words are supplied.
  std::map<std::pair<std::string, std::string>, MsdCounts> lexical_previous;
  std::map<std::pair<std::string, std::string>, MsdCounts> lexical_next;

  OrientationCounts& operator+=(const OrientationCounts& other);
};

// One entry per aligned target position, in target order. Position j is
// monotone if (min S_j - 1, j - 1) is linked, swap if (max S_j + 1, j - 1) is
// linked, discontinuous otherwise. A virtual link (-1, -1) precedes the
// sentence.
std::vector<std::pair<std::size_t, Orientation>> classify_previous(const AlignmentMatrix& alignment);
// Mirror against the following target position, with a virtual link
// (source_len, target_len) after the sentence.
std::vector<std::pair<std::size_t, Orientation>> classify_next(const AlignmentMatrix& alignment);

OrientationCounts extract_msd(const AlignmentMatrix& alignment, MsdDirection direction);

// Also fills the lexical tables; the foreign unit is the aligned source words
// joined by spaces. Throws DimensionMismatch if the sentence lengths differ
// from the alignment.
OrientationCounts extract_msd(const AlignmentMatrix& alignment, MsdDirection direction,
                              const std::vector<std::string>& source,
                              const std::vector<std::string>& target);

}  // namespace smtkit

#endif  // SMTKIT_ORIENTATION_H_
