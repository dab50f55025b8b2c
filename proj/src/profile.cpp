#include "mishear/profile.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace mishear {

void LanguageProfile::validate() const {
    model.validate();
    if (lexicon_size < 1) throw std::invalid_argument("lexicon_size must be >= 1");
    if (sounds < 2) throw std::invalid_argument("sounds must be >= 2");
    if (!(epsilon > 0.0) || epsilon > 1.0)
        throw std::invalid_argument("epsilon must be in (0, 1]");
    if (!(sound_letter_ratio > 0.0) || sound_letter_ratio > 1.0)
        throw std::invalid_argument("sound_letter_ratio must be in (0, 1]");
}

std::vector<LanguageProfile> builtin_profiles() {
    struct Row {
        const char* name;
        double alpha, beta;
    };
    static constexpr Row kRows[] = {
        {"English", 4.4, 0.60},   {"French", 4.9, 0.60},
        {"Hungarian", 6.7, 0.64}, {"Finnish", 6.8, 0.58},
        {"Korean", 8.2, 1.65},    {"Hindi", 6.0, 0.94},
        {"Tagalog", 6.0, 0.73},   {"Burmese", 2.6, 0.28},
    };
    std::vector<LanguageProfile> profiles;
    for (const auto& row : kRows) {
        LanguageProfile p;
        p.name = row.name;
        p.model = GammaWordLengthModel{row.alpha, row.beta, 100, Normalization::continuous};
        profiles.push_back(std::move(p));
    }
    return profiles;
}

std::vector<LanguageProfile> load_profiles(std::istream& in) {
    nlohmann::json doc = nlohmann::json::parse(in);
    if (!doc.is_array()) throw std::runtime_error("profiles file: expected a JSON array");
    if (doc.empty()) throw std::runtime_error("profiles file: no profiles");
    std::vector<LanguageProfile> profiles;
    for (const auto& item : doc) {
        LanguageProfile p;
        p.name = item.at("name").get<std::string>();
        p.model.alpha = item.at("alpha").get<double>();
        p.model.beta = item.at("beta").get<double>();
        p.lexicon_size = item.at("lexicon_size").get<std::int64_t>();
        p.sounds = item.at("sounds").get<int>();
        p.epsilon = item.at("epsilon").get<double>();
        if (item.contains("ratio")) p.sound_letter_ratio = item.at("ratio").get<double>();
        p.validate();
        profiles.push_back(std::move(p));
    }
    return profiles;
}

std::vector<LanguageProfile> load_profiles_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open profiles file: " + path);
    return load_profiles(in);
}

void save_profiles(std::ostream& out, const std::vector<LanguageProfile>& profiles) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& p : profiles) {
        doc.push_back({{"name", p.name},
                       {"alpha", p.model.alpha},
                       {"beta", p.model.beta},
                       {"lexicon_size", p.lexicon_size},
                       {"sounds", p.sounds},
                       {"epsilon", p.epsilon},
                       {"ratio", p.sound_letter_ratio}});
    }
    out << doc.dump(2) << '\n';
}

}  // namespace mishear
