#ifndef SMTKIT_STEMMER_H_
#define SMTKIT_STEMMER_H_

#include <map>
#include <memory>
#include <string>
#include <string_view>

namespace smtkit {

class Stemmer {
 public:
  virtual ~Stemmer() = default;
  virtual std::string stem(const std::string& word) const = 0;
};

// Porter's suffix-stripping algorithm for English, in the form of the
// author's reference implementation. Words with non-ASCII letters are
// returned unchanged.
class PorterStemmer : public Stemmer {
 public:
  std::string stem(const std::string& word) const override;
};

// Maps surface forms to base forms from a lexicon, e.g. the orth/base pairs
// harvested from tagged text. Unknown words map to themselves.
class LexiconStemmer : public Stemmer {
 public:
  LexiconStemmer() = default;
  explicit LexiconStemmer(std::map<std::string, std::string> lexicon)
      : lexicon_(std::move(lexicon)) {}

  void add(const std::string& form, const std::string& base) { lexicon_.emplace(form, base); }
  std::size_t size() const { return lexicon_.size(); }
  std::string stem(const std::string& word) const override;

  // Two whitespace-separated columns per line: form, base.
  static LexiconStemmer from_file(const std::string& path);

 private:
  std::map<std::string, std::string> lexicon_;
};

// "en" gives a Porter stemmer; anything else gives nullptr (exact matching
// only unless a lexicon is supplied).
std::unique_ptr<Stemmer> make_stemmer(std::string_view language);

}  // namespace smtkit

#endif  // SMTKIT_STEMMER_H_
