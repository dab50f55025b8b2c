#pragma once
// Corpus ingestion: word lists -> length histogram of unique words.
//
// Words are de-duplicated after case folding, so every lexicon entry
// contributes exactly once regardless of how often it appears in the input.
// Length is the number of Unicode scalar values left after stripping
// whitespace and combining marks.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string_view>

namespace mishear {

struct LengthHistogram {
    std::map<int, std::uint64_t> counts;  // length -> count, lengths >= 1
    std::uint64_t total = 0;
    int n_max = 0;

    void add(int length, std::uint64_t count = 1);
};

struct EmpiricalDistribution {
    std::map<int, double> probs;  // length -> probability, sums to 1
};

enum class CorpusFormat {
    plain,           // one word per line
    word_count_tsv,  // "word<TAB>count", count a positive integer
};

enum class WhitespacePolicy {
    reject,  // interior whitespace is an error (default)
    ignore,  // interior whitespace is skipped
};

// Number of Unicode scalar values after removing whitespace and combining
// marks. Leading/trailing whitespace is always trimmed. Throws
// std::invalid_argument on empty input (after trimming), interior whitespace
// under the reject policy, or malformed UTF-8.
int word_length(std::string_view word,
                WhitespacePolicy policy = WhitespacePolicy::reject);

// Parse a word list into a per-length histogram of unique words. Duplicate
// words (after case folding) collapse; in tsv mode the counts are validated
// but not used. Throws std::runtime_error naming the offending line on
// malformed input and on an empty corpus.
LengthHistogram parse_corpus(std::istream& stream,
                             CorpusFormat format = CorpusFormat::plain,
                             WhitespacePolicy policy = WhitespacePolicy::reject);

// probs[n] = counts[n] / total. Throws std::invalid_argument if total == 0.
EmpiricalDistribution histogram_to_distribution(const LengthHistogram& h);

// CSV with header "length,count", one row per nonzero length.
void write_histogram_csv(std::ostream& out, const LengthHistogram& h);

}  // namespace mishear
