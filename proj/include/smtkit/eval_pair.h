#ifndef SMTKIT_EVAL_PAIR_H_
#define SMTKIT_EVAL_PAIR_H_

#include <string>
#include <vector>

namespace smtkit {

using Tokens = std::vector<std::string>;

// One hypothesis sentence with its reference translations (at least one).
struct EvalPair {
  Tokens hypothesis;
  std::vector<Tokens> references;
};

using EvalCorpus = std::vector<EvalPair>;

}  // namespace smtkit

#endif  // SMTKIT_EVAL_PAIR_H_
