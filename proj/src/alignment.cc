#include "smtkit/alignment.h"

#include <algorithm>
#include <charconv>

#include "smtkit/error.h"

namespace smtkit {

AlignmentMatrix::AlignmentMatrix(std::size_t source_length, std::size_t target_length,
                                 const std::set<Link>& links)
    : source_length_(source_length), target_length_(target_length) {
  for (const auto& [i, j] : links) add(i, j);
}

void AlignmentMatrix::add(std::size_t i, std::size_t j) {
  if (i >= source_length_ || j >= target_length_) throw IndexOutOfRange(i, j);
  links_.emplace(i, j);
}

AlignmentMatrix AlignmentMatrix::transpose() const {
  AlignmentMatrix t(target_length_, source_length_);
  for (const auto& [i, j] : links_) t.links_.emplace(j, i);
  return t;
}

std::set<Link> parse_links(std::string_view text) {
  std::set<Link> links;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) ++pos;
    const std::size_t begin = pos;
    while (pos < text.size() && text[pos] != ' ' && text[pos] != '\t' && text[pos] != '\r') ++pos;
    if (pos == begin) break;
    const std::string_view token = text.substr(begin, pos - begin);
    const std::size_t dash = token.find('-');
    if (dash == std::string_view::npos || dash == 0 || dash + 1 == token.size())
      throw ParseError(std::string(token));
    std::size_t i = 0, j = 0;
    const auto r1 = std::from_chars(token.data(), token.data() + dash, i);
    const auto r2 = std::from_chars(token.data() + dash + 1, token.data() + token.size(), j);
    if (r1.ec != std::errc() || r1.ptr != token.data() + dash || r2.ec != std::errc() ||
        r2.ptr != token.data() + token.size())
      throw ParseError(std::string(token));
    links.emplace(i, j);
  }
  return links;
}

AlignmentMatrix parse_alignment_line(std::string_view text, std::size_t source_length,
                                     std::size_t target_length) {
  return AlignmentMatrix(source_length, target_length, parse_links(text));
}

std::string format_alignment(const AlignmentMatrix& alignment) {
  std::string out;
  for (const auto& [i, j] : alignment.links()) {
    if (!out.empty()) out.push_back(' ');
    out += std::to_string(i) + "-" + std::to_string(j);
  }
  return out;
}

namespace {

void check_dimensions(const AlignmentMatrix& a, const AlignmentMatrix& b) {
  if (a.source_length() != b.source_length() || a.target_length() != b.target_length())
    throw DimensionMismatch();
}

void check_subset(const AlignmentMatrix& seed, const AlignmentMatrix& candidates) {
  check_dimensions(seed, candidates);
  for (const auto& l : seed.links())
    if (!candidates.links().count(l)) throw SeedNotSubset();
}

struct Coverage {
  std::vector<bool> source, target;
  explicit Coverage(const AlignmentMatrix& m)
      : source(m.source_length(), false), target(m.target_length(), false) {
    for (const auto& [i, j] : m.links()) {
      source[i] = true;
      target[j] = true;
    }
  }
  void mark(std::size_t i, std::size_t j) {
    source[i] = true;
    target[j] = true;
  }
};

// Candidates in scan order: target index outer, source index inner.
std::vector<Link> scan_order(const AlignmentMatrix& m) {
  std::vector<Link> out(m.links().begin(), m.links().end());
  std::sort(out.begin(), out.end(), [](const Link& a, const Link& b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
  });
  return out;
}

}  // namespace

AlignmentMatrix intersect(const AlignmentMatrix& a, const AlignmentMatrix& b) {
  check_dimensions(a, b);
  AlignmentMatrix out(a.source_length(), a.target_length());
  for (const auto& [i, j] : a.links())
    if (b.contains(i, j)) out.add(i, j);
  return out;
}

AlignmentMatrix unite(const AlignmentMatrix& a, const AlignmentMatrix& b) {
  check_dimensions(a, b);
  AlignmentMatrix out = a;
  for (const auto& [i, j] : b.links()) out.add(i, j);
  return out;
}

AlignmentMatrix grow_diag(const AlignmentMatrix& seed, const AlignmentMatrix& candidates,
                          Neighborhood neighborhood) {
  check_subset(seed, candidates);
  static constexpr int kCross[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
  static constexpr int kDiag[4][2] = {{-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
  AlignmentMatrix current = seed;
  Coverage cov(current);
  const auto order = scan_order(candidates);
  auto next_to_link = [&](std::size_t i, std::size_t j) {
    auto linked = [&](const int (*offsets)[2]) {
      for (int k = 0; k < 4; ++k) {
        const long ni = static_cast<long>(i) + offsets[k][0];
        const long nj = static_cast<long>(j) + offsets[k][1];
        if (ni >= 0 && nj >= 0 &&
            current.contains(static_cast<std::size_t>(ni), static_cast<std::size_t>(nj)))
          return true;
      }
      return false;
    };
    return linked(kCross) || (neighborhood == Neighborhood::kDiag && linked(kDiag));
  };
  bool added = true;
  while (added) {
    added = false;
    for (const auto& [i, j] : order) {
      if (current.contains(i, j)) continue;
      if ((cov.source[i] && cov.target[j]) || !next_to_link(i, j)) continue;
      current.add(i, j);
      cov.mark(i, j);
      added = true;
    }
  }
  return current;
}

AlignmentMatrix finalize(const AlignmentMatrix& current, const AlignmentMatrix& candidates,
                         FinalMode mode) {
  check_subset(current, candidates);
  AlignmentMatrix out = current;
  Coverage cov(out);
  const auto order = scan_order(candidates);
  for (const auto& [i, j] : order) {
    if (!cov.source[i] && !cov.target[j]) {
      out.add(i, j);
      cov.mark(i, j);
    }
  }
  if (mode == FinalMode::kFinal) {
    for (const auto& [i, j] : order) {
      if (out.contains(i, j)) continue;
      if (!cov.source[i] || !cov.target[j]) {
        out.add(i, j);
        cov.mark(i, j);
      }
    }
  }
  return out;
}

std::string_view to_string(Heuristic heuristic) {
  switch (heuristic) {
    case Heuristic::kIntersection: return "intersection";
    case Heuristic::kUnion: return "union";
    case Heuristic::kGrowDiag: return "grow-diag";
    case Heuristic::kGrowDiagFinal: return "grow-diag-final";
    case Heuristic::kGrowDiagFinalAnd: return "grow-diag-final-and";
    case Heuristic::kSrcToTgtOnly: return "src2tgt-only";
    case Heuristic::kTgtToSrcOnly: return "tgt2src-only";
  }
  return "unknown";
}

const std::vector<Heuristic>& all_heuristics() {
  static const std::vector<Heuristic> all = {
      Heuristic::kIntersection,  Heuristic::kUnion,        Heuristic::kGrowDiag,
      Heuristic::kGrowDiagFinal, Heuristic::kGrowDiagFinalAnd, Heuristic::kSrcToTgtOnly,
      Heuristic::kTgtToSrcOnly};
  return all;
}

std::optional<Heuristic> parse_heuristic(std::string_view name) {
  for (Heuristic h : all_heuristics())
    if (to_string(h) == name) return h;
  if (name == "srctotgt") return Heuristic::kSrcToTgtOnly;
  if (name == "tgttosrc") return Heuristic::kTgtToSrcOnly;
  return std::nullopt;
}

AlignmentMatrix symmetrize(const AlignmentMatrix& src2tgt, const AlignmentMatrix& tgt2src,
                           Heuristic heuristic) {
  const AlignmentMatrix reverse = tgt2src.transpose();
  check_dimensions(src2tgt, reverse);
  switch (heuristic) {
    case Heuristic::kSrcToTgtOnly: return src2tgt;
    case Heuristic::kTgtToSrcOnly: return reverse;
    case Heuristic::kIntersection: return intersect(src2tgt, reverse);
    case Heuristic::kUnion: return unite(src2tgt, reverse);
    default: break;
  }
  const AlignmentMatrix both = intersect(src2tgt, reverse);
  const AlignmentMatrix any = unite(src2tgt, reverse);
  const AlignmentMatrix grown = grow_diag(both, any, Neighborhood::kDiag);
  if (heuristic == Heuristic::kGrowDiag) return grown;
  return finalize(grown, any,
                  heuristic == Heuristic::kGrowDiagFinal ? FinalMode::kFinal : FinalMode::kFinalAnd);
}

}  // namespace smtkit
