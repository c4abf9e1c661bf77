#include <memory>

#include <fmt/format.h>

#include "commands.h"
#include "smtkit/arpa.h"
#include "smtkit/error.h"
#include "smtkit/mixture.h"
#include "smtkit/report.h"
#include "smtkit/smoothing.h"

namespace smtkit::cli {

namespace {

Sentences load_sentences(const std::string& path, bool lowercase) {
  TokenizationScheme scheme;
  scheme.lowercase = lowercase;
  return to_sentences(make_corpus(read_lines(path)), scheme);
}

std::vector<NGramModel> load_models(const std::vector<std::string>& paths) {
  std::vector<NGramModel> models;
  for (const auto& p : paths) models.push_back(read_arpa(p));
  return models;
}

std::vector<const NGramModel*> pointers(const std::vector<NGramModel>& models) {
  std::vector<const NGramModel*> out;
  for (const auto& m : models) out.push_back(&m);
  return out;
}

nlohmann::json model_summary(const NGramModel& model) {
  std::vector<std::size_t> sizes;
  for (int n = 1; n <= model.order(); ++n) sizes.push_back(model.table(n).size());
  return {{"order", model.order()},
          {"smoothing", to_string(model.smoothing())},
          {"ngrams", sizes},
          {"notes", model.notes}};
}

std::string describe_model(const NGramModel& model) {
  std::string out = fmt::format("order {}  smoothing {}\n", model.order(), to_string(model.smoothing()));
  for (int n = 1; n <= model.order(); ++n) out += fmt::format("  {}-grams {}\n", n, model.table(n).size());
  for (const auto& note : model.notes) out += "note: " + note + "\n";
  return out;
}

}  // namespace

void add_lm_commands(CLI::App& app, Context& ctx) {
  auto* lm = app.add_subcommand("lm", "Train, combine and evaluate n-gram language models");
  lm->require_subcommand(1);

  {
    struct TrainArgs {
      std::string input, output, smoothing = "kn";
      int order = 5;
      bool lowercase = false;
      ReportOptions report;
    };
    auto args = std::make_shared<TrainArgs>();
    auto* cmd = lm->add_subcommand("train", "Estimate a smoothed back-off model");
    cmd->add_option("--input", args->input, "Training text")->required()->check(CLI::ExistingFile);
    cmd->add_option("--output", args->output, "ARPA file")->required();
    cmd->add_option("--order", args->order)->check(CLI::Range(1, 6));
    cmd->add_option("--smoothing", args->smoothing, "kn or wb");
    cmd->add_flag("--lowercase", args->lowercase);
    args->report.add(cmd);
    cmd->callback([&ctx, args] {
      ctx.action = [&ctx, args] {
        const auto smoothing = parse_smoothing(args->smoothing);
        if (!smoothing || (*smoothing != Smoothing::kKneserNey && *smoothing != Smoothing::kWittenBell))
          throw InputError("smoothing must be kn or wb, got " + args->smoothing);
        const auto counts = count_ngrams(load_sentences(args->input, args->lowercase), args->order, ctx.jobs);
        std::vector<Discount> discounts;
        const NGramModel model = *smoothing == Smoothing::kKneserNey
                                     ? estimate_kneser_ney(counts, {}, &discounts)
                                     : estimate_witten_bell(counts);
        write_arpa(model, args->output);
        auto j = model_summary(model);
        std::string text = describe_model(model);
        if (!discounts.empty()) {
          j["discounts"] = nlohmann::json::array();
          for (std::size_t n = 0; n < discounts.size(); ++n) {
            j["discounts"].push_back(to_json(discounts[n]));
            text += fmt::format("  D{} = {:.6f}{}\n", n + 1, discounts[n].value,
                                discounts[n].clamped ? " (clamped)" : "");
          }
        }
        args->report.emit(ctx, j, text);
      };
    });
  }
  {
    struct PerplexityArgs {
      std::string model, input;
      bool lowercase = false;
      ReportOptions report;
    };
    auto args = std::make_shared<PerplexityArgs>();
    auto* cmd = lm->add_subcommand("perplexity", "Perplexity of a model on a text");
    cmd->add_option("--model", args->model, "ARPA file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--input", args->input, "Evaluation text")->required()->check(CLI::ExistingFile);
    cmd->add_flag("--lowercase", args->lowercase);
    args->report.add(cmd);
    cmd->callback([&ctx, args] {
      ctx.action = [&ctx, args] {
        const auto model = read_arpa(args->model);
        const auto r = perplexity(model, load_sentences(args->input, args->lowercase));
        args->report.emit(ctx, to_json(r),
                          fmt::format("perplexity {:.4f}  tokens {}  sentences {}  oov {}\n",
                                      r.perplexity, r.tokens, r.sentences, r.oov));
      };
    });
  }
  {
    struct InterpolateArgs {
      std::vector<std::string> models;
      std::vector<double> weights;
      std::string output;
      ReportOptions report;
    };
    auto args = std::make_shared<InterpolateArgs>();
    auto* cmd = lm->add_subcommand("interpolate", "Linear interpolation of several models");
    cmd->add_option("--model", args->models, "ARPA files")->required()->check(CLI::ExistingFile);
    cmd->add_option("--weights", args->weights, "One weight per model, summing to 1")
        ->required()
        ->delimiter(',');
    cmd->add_option("--output", args->output, "ARPA file")->required();
    args->report.add(cmd);
    cmd->callback([&ctx, args] {
      ctx.action = [&ctx, args] {
        const auto models = load_models(args->models);
        const auto mixed = interpolate(pointers(models), args->weights);
        write_arpa(mixed, args->output);
        args->report.emit(ctx, model_summary(mixed), describe_model(mixed));
      };
    });
  }
  {
    struct TuneArgs {
      std::vector<std::string> models;
      std::string dev, output;
      bool lowercase = false;
      ReportOptions report;
    };
    auto args = std::make_shared<TuneArgs>();
    auto* cmd = lm->add_subcommand("tune", "Fit interpolation weights on a development text by EM");
    cmd->add_option("--model", args->models, "ARPA files")->required()->check(CLI::ExistingFile);
    cmd->add_option("--dev", args->dev, "Development text")->required()->check(CLI::ExistingFile);
    cmd->add_option("--output", args->output, "Also write the interpolated model");
    cmd->add_flag("--lowercase", args->lowercase);
    args->report.add(cmd);
    cmd->callback([&ctx, args] {
      ctx.action = [&ctx, args] {
        const auto models = load_models(args->models);
        const auto r = tune_weights(pointers(models), load_sentences(args->dev, args->lowercase), ctx.jobs);
        if (!args->output.empty()) write_arpa(interpolate(pointers(models), r.weights), args->output);
        std::string text = fmt::format("iterations {}\n", r.iterations);
        for (std::size_t i = 0; i < r.weights.size(); ++i)
          text += fmt::format("  {}  {:.6f}\n", args->models[i], r.weights[i]);
        args->report.emit(ctx, to_json(r), text);
      };
    });
  }
}

}  // namespace smtkit::cli
