#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pf/corpus.hpp"
#include "pf/entity_embedder.hpp"
#include "pf/lexicon.hpp"
#include "pf/readability.hpp"
#include "pf/word_vectors.hpp"

namespace pf {

/// Feature families, in their fixed concatenation order.
enum class Segment : std::uint8_t { Tweets, Description, Empath, Readability, Counts, Url, Hashtag, Mention };

inline constexpr std::array<Segment, 8> kSegmentOrder = {Segment::Tweets,      Segment::Description,
                                                         Segment::Empath,      Segment::Readability,
                                                         Segment::Counts,      Segment::Url,
                                                         Segment::Hashtag,     Segment::Mention};

std::string_view segment_name(Segment s) noexcept;

inline constexpr std::size_t kEntityEmbeddingDim = 64;

struct AblationConfig {
    std::string name;
    std::string label;  // human-readable row label
    bool tweets_encoding = true;
    bool description_encoding = true;
    bool url_emb = true;
    bool hashtag_emb = true;
    bool mention_emb = true;
    bool readability = true;
    bool counts = true;
    bool empath = true;

    bool enabled(Segment s) const noexcept;
};

/// The nine presets: all, only-tweets, wo-urls, wo-hashtags, wo-mentions,
/// wo-entities, wo-readability, wo-counts, wo-empath.
const std::vector<AblationConfig>& ablation_presets();

/// Throws ConfigError for an unknown name.
const AblationConfig& find_preset(std::string_view name);

/// Per-user inputs computed once, before any configuration is applied.
struct UserFeatures {
    std::string user_id;
    PersonalityClass personality = PersonalityClass::Analyst;
    std::vector<double> tweets_encoding;       // empty when no native encoder was loaded
    std::vector<double> description_encoding;
    std::vector<double> empath;
    ReadabilityScores readability;
    ProfileCounts counts;
    std::vector<std::string> hashtags;  // the user's entity documents
    std::vector<std::string> urls;
    std::vector<std::string> mentions;

    nlohmann::json to_json() const;
    static UserFeatures from_json(const nlohmann::json& j);
};

struct FeatureResources {
    const WordVectorTable* word_vectors = nullptr;  // optional; native text encoder
    const Lexicon* lexicon = nullptr;
    FamiliarLists familiar;
};

/// Separates, normalizes and scores one eligible user.
UserFeatures extract_user_features(const UserRecord& user, const FeatureResources& resources);

/// Text encodings for one encoder source. `tweets`/`description` are null for
/// the native encoder, whose vectors live in UserFeatures.
struct EncoderSource {
    std::string name = "native";
    const EncodingMap* tweets = nullptr;
    const EncodingMap* description = nullptr;

    bool is_external() const noexcept { return tweets != nullptr; }
    /// True when this source can encode `user`.
    bool covers(const UserFeatures& user) const;
};

struct FeatureArtifacts {
    EncoderSource encoder;
    const EntityEmbedder* url = nullptr;
    const EntityEmbedder* hashtag = nullptr;
    const EntityEmbedder* mention = nullptr;
};

struct SegmentInfo {
    std::string name;
    std::size_t offset = 0;
    std::size_t length = 0;
};

struct FeatureVector {
    std::vector<double> values;
    std::vector<SegmentInfo> layout;
};

/// Concatenates the enabled segments in fixed order; disabled ones are
/// omitted. Missing artifacts for an enabled flag raise ConfigError naming it.
FeatureVector assemble_features(const UserFeatures& user, const FeatureArtifacts& artifacts,
                                const AblationConfig& config);

}  // namespace pf
