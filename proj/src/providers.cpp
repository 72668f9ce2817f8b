#include "vsum/providers.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "vsum/error.hpp"
#include "vsum/synthetic.hpp"

namespace vsum {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, kRoleCount> kRoleNames = {
    "frame-embed", "text-embed", "caption", "transcribe", "summarize"};

bool is_embed_role(Role role) { return role == Role::kFrameEmbed || role == Role::kTextEmbed; }

void check_frames(const FrameRequest& r) {
  if (r.video_ref.empty()) throw InvalidInput("frame request without a video ref");
  if (!(r.duration > 0.0)) throw InvalidInput("frame request for '" + r.video_ref + "' has no duration");
  for (std::size_t i = 0; i < r.timestamps.size(); ++i) {
    const double t = r.timestamps[i];
    if (!(t >= 0.0 && t < r.duration)) {
      throw InvalidInput("timestamp " + std::to_string(t) + " outside [0, " +
                         std::to_string(r.duration) + ") for '" + r.video_ref + "'");
    }
    if (i > 0 && t < r.timestamps[i - 1]) throw InvalidInput("frame timestamps must be sorted");
  }
}

template <typename Fn>
auto with_context(const std::string& ctx, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const MissingKey& e) {
    throw MissingKey(ctx + ": " + e.what());
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw ProviderError(ctx + ": " + e.what());
  }
}

}  // namespace

std::string_view to_string(Role role) noexcept { return kRoleNames[static_cast<std::size_t>(role)]; }

std::string_view to_string(Backend backend) noexcept {
  switch (backend) {
    case Backend::kSynthetic: return "synthetic";
    case Backend::kFile: return "file";
    case Backend::kRemote: return "remote";
  }
  return "unknown";
}

Role parse_role(std::string_view name) {
  for (std::size_t i = 0; i < kRoleCount; ++i) {
    if (kRoleNames[i] == name) return static_cast<Role>(i);
  }
  throw InvalidInput("unknown provider role '" + std::string(name) + "'");
}

Backend parse_backend(std::string_view name) {
  for (auto b : {Backend::kSynthetic, Backend::kFile, Backend::kRemote}) {
    if (to_string(b) == name) return b;
  }
  throw InvalidInput("unknown provider backend '" + std::string(name) + "'");
}

void ProviderConfig::validate() const {
  const std::string who = std::string(to_string(role)) + "/" + std::string(to_string(backend));
  if (is_embed_role(role) && dim < 2 && backend != Backend::kRemote) {
    throw InvalidInput(who + ": dim must be at least 2");
  }
  if ((backend == Backend::kRemote) != !endpoint.empty()) {
    throw InvalidInput(who + ": endpoint is required for, and only for, the remote backend");
  }
  // Frame features may instead come from per-video feature files.
  if (backend == Backend::kFile && path.empty() && role != Role::kFrameEmbed) {
    throw InvalidInput(who + ": file backend needs a path");
  }
}

ProviderConfig ProviderConfig::from_json(Role role, const json& j, const std::filesystem::path& base_dir) {
  ProviderConfig c;
  c.role = role;
  try {
    c.backend = parse_backend(j.value("backend", std::string("synthetic")));
    c.dim = j.value("dim", std::size_t{is_embed_role(role) ? 64u : 0u});
    c.endpoint = j.value("endpoint", std::string());
    c.model_name = j.value("model", std::string());
    c.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("path")) {
      std::filesystem::path p = j.at("path").get<std::string>();
      c.path = p.is_absolute() ? p : base_dir / p;
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("provider config for ") + std::string(to_string(role)) + ": " + e.what());
  }
  c.validate();
  return c;
}

std::string Provider::context(Role role) const {
  return std::string(to_string(role)) + "/" + std::string(to_string(backend()));
}

void Provider::check_embeddings(Role role, std::size_t expected,
                                const std::vector<EmbeddingVector>& out) const {
  if (out.size() != expected) {
    throw ProviderError(context(role) + ": expected " + std::to_string(expected) +
                        " vectors, got " + std::to_string(out.size()));
  }
  const std::size_t want = declared_dim() ? declared_dim() : (out.empty() ? 0 : out.front().dim());
  for (const auto& v : out) {
    if (v.dim() != want) {
      throw ProviderError(context(role) + ": dimension mismatch, expected " + std::to_string(want) +
                          ", got " + std::to_string(v.dim()));
    }
  }
}

std::vector<EmbeddingVector> Provider::embed_texts(std::span<const std::string> texts) {
  if (texts.empty()) throw InvalidInput(context(Role::kTextEmbed) + ": no texts to embed");
  for (const auto& t : texts) {
    if (t.empty()) throw InvalidInput(context(Role::kTextEmbed) + ": empty text");
  }
  count(Role::kTextEmbed);
  auto out = with_context(context(Role::kTextEmbed), [&] { return do_embed_texts(texts); });
  check_embeddings(Role::kTextEmbed, texts.size(), out);
  return out;
}

std::vector<EmbeddingVector> Provider::embed_frames(const FrameRequest& request) {
  check_frames(request);
  count(Role::kFrameEmbed);
  if (request.timestamps.empty()) return {};
  auto out = with_context(context(Role::kFrameEmbed), [&] { return do_embed_frames(request); });
  check_embeddings(Role::kFrameEmbed, request.timestamps.size(), out);
  return out;
}

std::vector<std::string> Provider::caption_frames(const FrameRequest& request) {
  check_frames(request);
  count(Role::kCaption);
  if (request.timestamps.empty()) return {};
  auto out = with_context(context(Role::kCaption), [&] { return do_caption_frames(request); });
  if (out.size() != request.timestamps.size()) {
    throw ProviderError(context(Role::kCaption) + ": caption count does not match frame count");
  }
  return out;
}

std::vector<CaptionCue> Provider::transcribe(const std::string& video_ref) {
  if (video_ref.empty()) throw InvalidInput(context(Role::kTranscribe) + ": empty video ref");
  count(Role::kTranscribe);
  auto cues = with_context(context(Role::kTranscribe), [&] { return do_transcribe(video_ref); });
  return normalize_cues(std::move(cues));
}

std::string Provider::summarize_texts(std::span<const std::string> texts) {
  if (texts.empty()) throw InvalidInput(context(Role::kSummarize) + ": nothing to summarize");
  count(Role::kSummarize);
  auto out = with_context(context(Role::kSummarize), [&] { return do_summarize_texts(texts); });
  if (out.empty()) throw ProviderError(context(Role::kSummarize) + ": empty summary");
  return out;
}

// --- synthetic -------------------------------------------------------------

SyntheticProvider::SyntheticProvider(std::size_t dim, std::uint64_t seed) : dim_(dim), seed_(seed) {
  if (dim < 2) throw InvalidInput("synthetic provider dim must be at least 2");
}

void SyntheticProvider::set_transcript(std::string video_ref, std::vector<CaptionCue> cues) {
  transcripts_[std::move(video_ref)] = std::move(cues);
}

std::vector<EmbeddingVector> SyntheticProvider::do_embed_texts(std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(synthetic_embed(t, dim_, seed_));
  return out;
}

std::vector<EmbeddingVector> SyntheticProvider::do_embed_frames(const FrameRequest& request) {
  std::vector<EmbeddingVector> out;
  out.reserve(request.timestamps.size());
  for (double t : request.timestamps) {
    out.push_back(synthetic_embed(frame_key(request.video_ref, t), dim_, seed_));
  }
  return out;
}

std::vector<std::string> SyntheticProvider::do_caption_frames(const FrameRequest& request) {
  std::vector<std::string> out;
  out.reserve(request.timestamps.size());
  for (double t : request.timestamps) out.push_back("caption(" + frame_key(request.video_ref, t) + ")");
  return out;
}

std::vector<CaptionCue> SyntheticProvider::do_transcribe(const std::string& video_ref) {
  auto it = transcripts_.find(video_ref);
  return it == transcripts_.end() ? std::vector<CaptionCue>{} : it->second;
}

std::string SyntheticProvider::do_summarize_texts(std::span<const std::string> texts) {
  std::string joined;
  for (const auto& t : texts) {
    if (!joined.empty()) joined.push_back(' ');
    joined += t;
  }
  std::size_t code_points = 0;
  for (std::size_t i = 0; i < joined.size(); ++i) {
    if ((static_cast<unsigned char>(joined[i]) & 0xC0) != 0x80) {
      if (code_points == kSyntheticSummaryLimit) {
        joined.resize(i);
        break;
      }
      ++code_points;
    }
  }
  return joined;
}

// --- file ------------------------------------------------------------------

FileProvider::FileProvider(FileSources sources) : sources_(std::move(sources)) {
  if (sources_.features) {
    for (const auto& [key, vec] : sources_.features->entries()) {
      if (std::abs(vec.norm() - 1.0) > 1e-6) {
        normalized_ = false;
        break;
      }
    }
  }
}

std::size_t FileProvider::declared_dim() const noexcept {
  return sources_.features ? sources_.features->dim() : 0;
}

const FeatureTable& FileProvider::features() const {
  if (!sources_.features) throw InvalidInput("file provider has no feature table");
  return *sources_.features;
}

const std::string& FileProvider::text(const std::string& key) const {
  auto it = sources_.texts.find(key);
  if (it == sources_.texts.end()) throw MissingKey("text key '" + key + "' not found");
  return it->second;
}

std::vector<EmbeddingVector> FileProvider::do_embed_texts(std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(features().at(t));
  return out;
}

std::vector<EmbeddingVector> FileProvider::do_embed_frames(const FrameRequest& request) {
  std::vector<EmbeddingVector> out;
  out.reserve(request.timestamps.size());
  for (double t : request.timestamps) out.push_back(features().at(frame_key(request.video_ref, t)));
  return out;
}

std::vector<std::string> FileProvider::do_caption_frames(const FrameRequest& request) {
  std::vector<std::string> out;
  out.reserve(request.timestamps.size());
  for (double t : request.timestamps) out.push_back(text(frame_key(request.video_ref, t)));
  return out;
}

std::vector<CaptionCue> FileProvider::do_transcribe(const std::string& video_ref) {
  auto it = sources_.transcripts.find(video_ref);
  if (it == sources_.transcripts.end()) throw MissingKey("no transcript for '" + video_ref + "'");
  return it->second;
}

std::string FileProvider::do_summarize_texts(std::span<const std::string> texts) {
  std::string key;
  for (const auto& t : texts) {
    if (!key.empty()) key.push_back('\n');
    key += t;
  }
  return text(key);
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::map<std::string, std::string> load_text_table(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      const auto rec = json::parse(line);
      auto key = rec.at("key").get<std::string>();
      if (!out.emplace(key, rec.at("text").get<std::string>()).second) {
        throw ParseError("duplicate text key '" + key + "'", lineno);
      }
    } catch (const json::exception& e) {
      throw ParseError(path.string() + ": malformed text record: " + e.what(), lineno);
    }
  }
  return out;
}

std::map<std::string, std::vector<CaptionCue>> load_transcript_table(
    const std::filesystem::path& path) {
  std::map<std::string, std::vector<CaptionCue>> out;
  try {
    const auto doc = json::parse(read_file(path));
    for (const auto& [ref, cues] : doc.items()) {
      std::vector<CaptionCue> list;
      for (const auto& c : cues) {
        list.push_back({TimeSpan(c.at("start").get<double>(), c.at("end").get<double>()),
                        c.at("text").get<std::string>()});
      }
      out.emplace(ref, std::move(list));
    }
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return out;
}

std::shared_ptr<Provider> make_provider(const ProviderConfig& config) {
  config.validate();
  switch (config.backend) {
    case Backend::kSynthetic:
      return std::make_shared<SyntheticProvider>(is_embed_role(config.role) ? config.dim : 64,
                                                 config.seed);
    case Backend::kFile: {
      FileSources sources;
      if (is_embed_role(config.role)) {
        sources.features = load_feature_table(config.path);
      } else if (config.role == Role::kTranscribe) {
        sources.transcripts = load_transcript_table(config.path);
      } else {
        sources.texts = load_text_table(config.path);
      }
      return std::make_shared<FileProvider>(std::move(sources));
    }
    case Backend::kRemote: {
      RemoteOptions options;
      options.endpoint = config.endpoint;
      options.model_name = config.model_name;
      options.dim = is_embed_role(config.role) ? config.dim : 0;
      return std::make_shared<RemoteProvider>(std::move(options));
    }
  }
  throw InvalidInput("unsupported backend");
}

ProviderSet::ProviderSet(std::shared_ptr<Provider> all) {
  for (auto& p : providers_) p = all;
}

void ProviderSet::set(Role role, std::shared_ptr<Provider> provider) {
  providers_[static_cast<std::size_t>(role)] = std::move(provider);
}

Provider& ProviderSet::get(Role role) const { return *shared(role); }

std::shared_ptr<Provider> ProviderSet::shared(Role role) const {
  const auto& p = providers_[static_cast<std::size_t>(role)];
  if (!p) throw InvalidInput("no provider configured for role " + std::string(to_string(role)));
  return p;
}

}  // namespace vsum
