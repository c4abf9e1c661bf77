#include <algorithm>
#include <fstream>
#include <memory>

#include <fmt/format.h>

#include "commands.h"
#include "smtkit/alignment.h"
#include "smtkit/corpus.h"
#include "smtkit/error.h"
#include "smtkit/orientation.h"
#include "smtkit/parallel.h"
#include "smtkit/report.h"

namespace smtkit::cli {

namespace {

struct SymmetrizeArgs {
  std::string forward, reverse, output;
  std::string heuristic = "grow-diag-final-and";
  std::string source, target;
  std::string msd;
  ReportOptions report;
};

std::size_t extent(const std::set<Link>& links, bool first) {
  std::size_t n = 0;
  for (const auto& l : links) n = std::max(n, (first ? l.first : l.second) + 1);
  return n;
}

}  // namespace

void add_symmetrize_command(CLI::App& app, Context& ctx) {
  auto args = std::make_shared<SymmetrizeArgs>();
  auto* cmd = app.add_subcommand("symmetrize", "Combine two directional word alignments");
  cmd->add_option("--forward", args->forward, "Source-to-target alignments, \"i-j\" per link")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--reverse", args->reverse,
                  "Target-to-source alignments, target index first")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--output", args->output, "Symmetrized alignments")->required();
  cmd->add_option("--heuristic", args->heuristic,
                  "intersection, union, grow-diag, grow-diag-final, grow-diag-final-and, "
                  "src2tgt-only or tgt2src-only");
  cmd->add_option("--source", args->source, "Source sentences, used for lengths and MSD words")
      ->check(CLI::ExistingFile);
  cmd->add_option("--target", args->target, "Target sentences, used for lengths and MSD words")
      ->check(CLI::ExistingFile);
  cmd->add_option("--msd", args->msd, "Also count orientations: fe or bidirectional-fe")
      ->check(CLI::IsMember({"fe", "bidirectional-fe"}));
  args->report.add(cmd);
  cmd->callback([&ctx, args] {
    ctx.action = [&ctx, args] {
      const auto heuristic = parse_heuristic(args->heuristic);
      if (!heuristic) throw InputError("unknown heuristic " + args->heuristic);
      if (args->source.empty() != args->target.empty())
        throw InputError("--source and --target must be given together");
      const auto fwd = read_lines(args->forward);
      const auto rev = read_lines(args->reverse);
      if (fwd.size() != rev.size()) throw LineCountMismatch(fwd.size(), rev.size(), args->reverse);
      std::vector<std::vector<std::string>> src_words, tgt_words;
      if (!args->source.empty()) {
        for (const auto& l : read_lines(args->source)) src_words.push_back(tokenize_words(l));
        for (const auto& l : read_lines(args->target)) tgt_words.push_back(tokenize_words(l));
        if (src_words.size() != fwd.size())
          throw LineCountMismatch(fwd.size(), src_words.size(), args->source);
        if (tgt_words.size() != fwd.size())
          throw LineCountMismatch(fwd.size(), tgt_words.size(), args->target);
      }

      const std::size_t n = fwd.size();
      std::vector<AlignmentMatrix> results(n);
      std::vector<std::string> errors(n);
      parallel_for(n, ctx.jobs, [&](std::size_t k) {
        try {
          const auto a = parse_links(fwd[k]);
          const auto b = parse_links(rev[k]);
          std::size_t src_len, tgt_len;
          if (!src_words.empty()) {
            src_len = src_words[k].size();
            tgt_len = tgt_words[k].size();
          } else {
            src_len = std::max(extent(a, true), extent(b, false));
            tgt_len = std::max(extent(a, false), extent(b, true));
          }
          results[k] = symmetrize(AlignmentMatrix(src_len, tgt_len, a),
                                  AlignmentMatrix(tgt_len, src_len, b), *heuristic);
        } catch (const InputError& e) {
          errors[k] = e.what();
        }
      });
      for (std::size_t k = 0; k < n; ++k)
        if (!errors[k].empty()) throw InputError(fmt::format("line {}: {}", k + 1, errors[k]));

      std::vector<std::string> lines;
      lines.reserve(n);
      std::size_t links = 0;
      for (const auto& m : results) {
        lines.push_back(format_alignment(m));
        links += m.size();
      }
      write_lines(args->output, lines);

      nlohmann::json j = {{"sentences", n}, {"links", links}, {"heuristic", to_string(*heuristic)}};
      std::string text = fmt::format("sentences {}  links {}  heuristic {}\n", n, links,
                                     to_string(*heuristic));
      if (!args->msd.empty()) {
        const auto direction =
            args->msd == "fe" ? MsdDirection::kForward : MsdDirection::kBidirectional;
        OrientationCounts total;
        total.direction = direction;
        for (std::size_t k = 0; k < n; ++k)
          total += src_words.empty()
                       ? extract_msd(results[k], direction)
                       : extract_msd(results[k], direction, src_words[k], tgt_words[k]);
        j["msd"] = to_json(total);
        auto row = [&](std::string_view label, const MsdCounts& c) {
          const auto p = c.probabilities();
          text += fmt::format("  {:<8} M {} ({:.4f})  S {} ({:.4f})  D {} ({:.4f})\n", label,
                              c.counts[0], p[0], c.counts[1], p[1], c.counts[2], p[2]);
        };
        text += fmt::format("orientation ({})\n", to_string(direction));
        row("previous", total.previous);
        if (direction == MsdDirection::kBidirectional) row("next", total.next);
      }
      args->report.emit(ctx, j, text);
    };
  });
}

}  // namespace smtkit::cli
