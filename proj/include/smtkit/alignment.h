#ifndef SMTKIT_ALIGNMENT_H_
#define SMTKIT_ALIGNMENT_H_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace smtkit {

// (source index, target index), both 0-based.
using Link = std::pair<std::size_t, std::size_t>;

class AlignmentMatrix {
 public:
  AlignmentMatrix() = default;
  // Throws IndexOutOfRange for a link outside the matrix.
  AlignmentMatrix(std::size_t source_length, std::size_t target_length,
                  const std::set<Link>& links = {});

  std::size_t source_length() const { return source_length_; }
  std::size_t target_length() const { return target_length_; }
  const std::set<Link>& links() const { return links_; }
  std::size_t size() const { return links_.size(); }
  bool contains(std::size_t i, std::size_t j) const { return links_.count({i, j}) > 0; }

  void add(std::size_t i, std::size_t j);
  AlignmentMatrix transpose() const;

  friend bool operator==(const AlignmentMatrix&, const AlignmentMatrix&) = default;

 private:
  std::size_t source_length_ = 0;
  std::size_t target_length_ = 0;
  std::set<Link> links_;
};

// Whitespace-separated "i-j" pairs. Throws ParseError or IndexOutOfRange.
AlignmentMatrix parse_alignment_line(std::string_view text, std::size_t source_length,
                                     std::size_t target_length);
// Parses without dimensions; returns the links only.
std::set<Link> parse_links(std::string_view text);
std::string format_alignment(const AlignmentMatrix& alignment);

// Both throw DimensionMismatch.
AlignmentMatrix intersect(const AlignmentMatrix& a, const AlignmentMatrix& b);
AlignmentMatrix unite(const AlignmentMatrix& a, const AlignmentMatrix& b);

enum class Neighborhood { kCross, kDiag };

// Repeats passes over the candidates, target index outer and source index
// inner, adding any candidate next to a current link whose source or target
// word is still unaligned, until a pass adds nothing. Throws SeedNotSubset
// or DimensionMismatch.
AlignmentMatrix grow_diag(const AlignmentMatrix& seed, const AlignmentMatrix& candidates,
                          Neighborhood neighborhood = Neighborhood::kDiag);

enum class FinalMode { kFinal, kFinalAnd };

// One pass adding candidates that join two unaligned words; kFinal then makes
// a second pass adding candidates with at least one unaligned word. Running
// the stricter pass first keeps the final-and result inside the final one.
AlignmentMatrix finalize(const AlignmentMatrix& current, const AlignmentMatrix& candidates,
                         FinalMode mode);

enum class Heuristic {
  kIntersection,
  kUnion,
  kGrowDiag,
  kGrowDiagFinal,
  kGrowDiagFinalAnd,
  kSrcToTgtOnly,
  kTgtToSrcOnly,
};

std::string_view to_string(Heuristic heuristic);
std::optional<Heuristic> parse_heuristic(std::string_view name);
const std::vector<Heuristic>& all_heuristics();

// `tgt2src` is in its own orientation (target index first) and is transposed
// here. Throws DimensionMismatch.
AlignmentMatrix symmetrize(const AlignmentMatrix& src2tgt, const AlignmentMatrix& tgt2src,
                           Heuristic heuristic);

}  // namespace smtkit

#endif  // SMTKIT_ALIGNMENT_H_
