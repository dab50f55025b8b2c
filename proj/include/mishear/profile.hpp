#pragma once
// Per-language parameter bundle and its JSON serialization.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mishear/gamma_model.hpp"

namespace mishear {

struct LanguageProfile {
    std::string name;
    GammaWordLengthModel model;
    std::int64_t lexicon_size = 100000;  // Lambda, >= 1
    int sounds = 20;                     // nu, >= 2
    double epsilon = 0.05;               // prefix-word probability, in (0, 1]
    double sound_letter_ratio = 1.0;     // r, in (0, 1]

    void validate() const;  // throws std::invalid_argument
};

// The eight reference languages bundled with the library (English, French,
// Hungarian, Finnish, Korean, Hindi, Tagalog, Burmese) with the default
// lexicon size 1e5, 20 sounds and epsilon 1/20.
std::vector<LanguageProfile> builtin_profiles();

// JSON array of objects with fields
//   name, alpha, beta, lexicon_size, sounds, epsilon, ratio
std::vector<LanguageProfile> load_profiles(std::istream& in);
std::vector<LanguageProfile> load_profiles_file(const std::string& path);
void save_profiles(std::ostream& out, const std::vector<LanguageProfile>& profiles);

}  // namespace mishear
