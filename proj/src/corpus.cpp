#include "mishear/corpus.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace mishear {

namespace {

// Decodes one UTF-8 scalar value at position i, advancing i. Throws on
// malformed sequences (overlong forms and surrogates included).
std::uint32_t decode_utf8(std::string_view s, std::size_t& i) {
    const auto byte = [&](std::size_t j) -> std::uint32_t {
        return static_cast<unsigned char>(s[j]);
    };
    const std::uint32_t b0 = byte(i);
    std::size_t len;
    std::uint32_t cp;
    if (b0 < 0x80) {
        len = 1;
        cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        throw std::invalid_argument("malformed UTF-8 byte");
    }
    if (i + len > s.size()) throw std::invalid_argument("truncated UTF-8 sequence");
    for (std::size_t j = 1; j < len; ++j) {
        const std::uint32_t b = byte(i + j);
        if ((b & 0xC0) != 0x80) throw std::invalid_argument("malformed UTF-8 continuation");
        cp = (cp << 6) | (b & 0x3F);
    }
    static constexpr std::uint32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
        throw std::invalid_argument("invalid UTF-8 scalar value");
    i += len;
    return cp;
}

bool is_space_cp(std::uint32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
        case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

// Combining marks (Mn/Mc/Me), covering the general combining blocks plus the
// marks of the major scripts handled by this tool. Approximate by design:
// code points are a stand-in for letters, not a full segmentation.
bool is_combining_mark(std::uint32_t cp) {
    struct Range { std::uint32_t lo, hi; };
    static constexpr Range kRanges[] = {
        {0x0300, 0x036F},  // combining diacritical marks
        {0x0483, 0x0489},  // Cyrillic
        {0x0591, 0x05BD}, {0x05BF, 0x05BF}, {0x05C1, 0x05C2},
        {0x05C4, 0x05C5}, {0x05C7, 0x05C7},  // Hebrew points
        {0x0610, 0x061A}, {0x064B, 0x065F}, {0x0670, 0x0670},
        {0x06D6, 0x06DC}, {0x06DF, 0x06E4}, {0x06E7, 0x06E8},
        {0x06EA, 0x06ED},  // Arabic marks
        {0x0711, 0x0711}, {0x0730, 0x074A},  // Syriac
        {0x07A6, 0x07B0},  // Thaana
        {0x0900, 0x0903}, {0x093A, 0x093C}, {0x093E, 0x094F},
        {0x0951, 0x0957}, {0x0962, 0x0963},  // Devanagari signs
        {0x0981, 0x0983}, {0x09BC, 0x09BC}, {0x09BE, 0x09CD},
        {0x09D7, 0x09D7}, {0x09E2, 0x09E3},  // Bengali signs
        {0x0B82, 0x0B82}, {0x0BBE, 0x0BCD}, {0x0BD7, 0x0BD7},  // Tamil signs
        {0x0E31, 0x0E31}, {0x0E34, 0x0E3A}, {0x0E47, 0x0E4E},  // Thai marks
        {0x102B, 0x103E}, {0x1056, 0x1059}, {0x105E, 0x1060},
        {0x1062, 0x1064}, {0x1067, 0x106D}, {0x1071, 0x1074},
        {0x1082, 0x108D}, {0x108F, 0x108F}, {0x109A, 0x109D},  // Myanmar signs
        {0x1AB0, 0x1AFF},  // combining diacritical marks extended
        {0x1DC0, 0x1DFF},  // combining diacritical marks supplement
        {0x20D0, 0x20FF},  // combining marks for symbols
        {0xFE20, 0xFE2F},  // combining half marks
    };
    for (const auto& r : kRanges)
        if (cp >= r.lo && cp <= r.hi) return true;
    return false;
}

// ASCII + Latin-1 lowercasing, enough to fold sentence-initial capitals.
std::uint32_t fold_case(std::uint32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
    return cp;
}

std::vector<std::uint32_t> decode_all(std::string_view word) {
    std::vector<std::uint32_t> cps;
    cps.reserve(word.size());
    std::size_t i = 0;
    while (i < word.size()) cps.push_back(decode_utf8(word, i));
    return cps;
}

// Strips leading/trailing whitespace at the code-point level.
std::vector<std::uint32_t> trim(const std::vector<std::uint32_t>& cps) {
    std::size_t lo = 0, hi = cps.size();
    while (lo < hi && is_space_cp(cps[lo])) ++lo;
    while (hi > lo && is_space_cp(cps[hi - 1])) --hi;
    return {cps.begin() + lo, cps.begin() + hi};
}

int length_of(const std::vector<std::uint32_t>& trimmed, WhitespacePolicy policy) {
    int n = 0;
    for (const std::uint32_t cp : trimmed) {
        if (is_space_cp(cp)) {
            if (policy == WhitespacePolicy::reject)
                throw std::invalid_argument("word contains interior whitespace");
            continue;
        }
        if (!is_combining_mark(cp)) ++n;
    }
    if (n == 0) throw std::invalid_argument("word is empty");
    return n;
}

std::string folded_key(const std::vector<std::uint32_t>& trimmed) {
    std::string key;
    key.reserve(trimmed.size() * 2);
    for (const std::uint32_t cp : trimmed) {
        const std::uint32_t f = fold_case(cp);
        key.push_back(static_cast<char>(f & 0xFF));
        key.push_back(static_cast<char>((f >> 8) & 0xFF));
        key.push_back(static_cast<char>((f >> 16) & 0xFF));
    }
    return key;
}

}  // namespace

void LengthHistogram::add(int length, std::uint64_t count) {
    if (length < 1) throw std::invalid_argument("histogram length must be >= 1");
    counts[length] += count;
    total += count;
    n_max = std::max(n_max, length);
}

int word_length(std::string_view word, WhitespacePolicy policy) {
    const auto trimmed = trim(decode_all(word));
    if (trimmed.empty()) throw std::invalid_argument("word is empty");
    return length_of(trimmed, policy);
}

LengthHistogram parse_corpus(std::istream& stream, CorpusFormat format,
                             WhitespacePolicy policy) {
    LengthHistogram hist;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view entry = line;
        if (format == CorpusFormat::word_count_tsv) {
            if (entry.find_first_not_of(" \t") == std::string_view::npos) continue;
            const std::size_t tab = entry.find('\t');
            if (tab == std::string_view::npos)
                throw std::runtime_error("line " + std::to_string(line_no) +
                                         ": expected word<TAB>count");
            const std::string_view count_field = entry.substr(tab + 1);
            entry = entry.substr(0, tab);
            std::size_t pos = 0;
            long long count = 0;
            try {
                count = std::stoll(std::string(count_field), &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != count_field.size() || count <= 0)
                throw std::runtime_error("line " + std::to_string(line_no) +
                                         ": malformed count field '" +
                                         std::string(count_field) + "'");
        }
        std::vector<std::uint32_t> cps;
        try {
            cps = trim(decode_all(entry));
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (cps.empty()) continue;  // blank line
        int length = 0;
        try {
            length = length_of(cps, policy);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (seen.insert(folded_key(cps)).second) hist.add(length);
    }
    if (hist.total == 0) throw std::runtime_error("empty corpus");
    return hist;
}

EmpiricalDistribution histogram_to_distribution(const LengthHistogram& h) {
    if (h.total == 0) throw std::invalid_argument("histogram has zero total");
    EmpiricalDistribution dist;
    for (const auto& [n, c] : h.counts)
        dist.probs[n] = static_cast<double>(c) / static_cast<double>(h.total);
    return dist;
}

void write_histogram_csv(std::ostream& out, const LengthHistogram& h) {
    out << "length,count\n";
    for (const auto& [n, c] : h.counts)
        if (c > 0) out << n << ',' << c << '\n';
}

}  // namespace mishear
