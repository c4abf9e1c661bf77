#include "smtkit/orientation.h"

#include <algorithm>

#include "smtkit/error.h"

namespace smtkit {

std::string_view to_string(Orientation orientation) {
  switch (orientation) {
    case Orientation::kMonotone: return "monotone";
    case Orientation::kSwap: return "swap";
    case Orientation::kDiscontinuous: return "discontinuous";
  }
  return "unknown";
}

std::string_view to_string(MsdDirection direction) {
  return direction == MsdDirection::kForward ? "fe" : "bidirectional-fe";
}

std::array<double, 3> MsdCounts::probabilities() const {
  std::array<double, 3> p{};
  const auto t = total();
  if (t == 0) return p;
  for (int k = 0; k < 3; ++k) p[k] = static_cast<double>(counts[k]) / static_cast<double>(t);
  return p;
}

MsdCounts& MsdCounts::operator+=(const MsdCounts& other) {
  for (int k = 0; k < 3; ++k) counts[k] += other.counts[k];
  return *this;
}

OrientationCounts& OrientationCounts::operator+=(const OrientationCounts& other) {
  previous += other.previous;
  next += other.next;
  for (const auto& [key, c] : other.lexical_previous) lexical_previous[key] += c;
  for (const auto& [key, c] : other.lexical_next) lexical_next[key] += c;
  return *this;
}

namespace {

struct Span {
  long lo = 0, hi = 0;
  bool aligned = false;
};

std::vector<Span> target_spans(const AlignmentMatrix& a) {
  std::vector<Span> spans(a.target_length());
  for (const auto& [i, j] : a.links()) {
    Span& s = spans[j];
    const long li = static_cast<long>(i);
    if (!s.aligned) {
      s = {li, li, true};
    } else {
      s.lo = std::min(s.lo, li);
      s.hi = std::max(s.hi, li);
    }
  }
  return spans;
}

// Link lookup with the virtual boundary links at (-1,-1) and (I,J).
bool linked(const AlignmentMatrix& a, long i, long j) {
  const long src = static_cast<long>(a.source_length());
  const long tgt = static_cast<long>(a.target_length());
  if (i == -1 && j == -1) return true;
  if (i == src && j == tgt) return true;
  if (i < 0 || j < 0 || i >= src || j >= tgt) return false;
  return a.contains(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
}

}  // namespace

std::vector<std::pair<std::size_t, Orientation>> classify_previous(const AlignmentMatrix& alignment) {
  std::vector<std::pair<std::size_t, Orientation>> out;
  const auto spans = target_spans(alignment);
  for (std::size_t j = 0; j < spans.size(); ++j) {
    if (!spans[j].aligned) continue;
    const long pj = static_cast<long>(j) - 1;
    Orientation o = Orientation::kDiscontinuous;
    if (linked(alignment, spans[j].lo - 1, pj))
      o = Orientation::kMonotone;
    else if (linked(alignment, spans[j].hi + 1, pj))
      o = Orientation::kSwap;
    out.emplace_back(j, o);
  }
  return out;
}

std::vector<std::pair<std::size_t, Orientation>> classify_next(const AlignmentMatrix& alignment) {
  std::vector<std::pair<std::size_t, Orientation>> out;
  const auto spans = target_spans(alignment);
  for (std::size_t j = 0; j < spans.size(); ++j) {
    if (!spans[j].aligned) continue;
    const long nj = static_cast<long>(j) + 1;
    Orientation o = Orientation::kDiscontinuous;
    if (linked(alignment, spans[j].hi + 1, nj))
      o = Orientation::kMonotone;
    else if (linked(alignment, spans[j].lo - 1, nj))
      o = Orientation::kSwap;
    out.emplace_back(j, o);
  }
  return out;
}

namespace {

OrientationCounts extract(const AlignmentMatrix& alignment, MsdDirection direction,
                          const std::vector<std::string>* source,
                          const std::vector<std::string>* target) {
  OrientationCounts result;
  result.direction = direction;
  std::vector<std::string> foreign;
  if (source) {
    foreign.resize(alignment.target_length());
    for (const auto& [i, j] : alignment.links()) {
      if (!foreign[j].empty()) foreign[j].push_back(' ');
      foreign[j] += (*source)[i];
    }
  }
  auto tally = [&](const auto& classified, MsdCounts& total, auto& lexical) {
    for (const auto& [j, o] : classified) {
      ++total[o];
      if (source) ++lexical[{foreign[j], (*target)[j]}][o];
    }
  };
  tally(classify_previous(alignment), result.previous, result.lexical_previous);
  if (direction == MsdDirection::kBidirectional)
    tally(classify_next(alignment), result.next, result.lexical_next);
  return result;
}

}  // namespace

OrientationCounts extract_msd(const AlignmentMatrix& alignment, MsdDirection direction) {
  return extract(alignment, direction, nullptr, nullptr);
}

OrientationCounts extract_msd(const AlignmentMatrix& alignment, MsdDirection direction,
                              const std::vector<std::string>& source,
                              const std::vector<std::string>& target) {
  if (source.size() != alignment.source_length() || target.size() != alignment.target_length())
    throw DimensionMismatch();
  return extract(alignment, direction, &source, &target);
}

}  // namespace smtkit
