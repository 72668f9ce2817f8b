#pragma once

#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "vsum/embedding.hpp"
#include "vsum/feature_table.hpp"
#include "vsum/timeline.hpp"

namespace vsum {

enum class Role { kFrameEmbed, kTextEmbed, kCaption, kTranscribe, kSummarize };
inline constexpr std::size_t kRoleCount = 5;

enum class Backend { kSynthetic, kFile, kRemote };

std::string_view to_string(Role role) noexcept;
std::string_view to_string(Backend backend) noexcept;
Role parse_role(std::string_view name);        // throws InvalidInput
Backend parse_backend(std::string_view name);  // throws InvalidInput

struct ProviderConfig {
  Role role = Role::kTextEmbed;
  Backend backend = Backend::kSynthetic;
  std::size_t dim = 64;           // embed roles
  std::string endpoint;           // remote only
  std::string model_name;         // opaque tag forwarded to remote services
  std::filesystem::path path;     // file backend source
  std::uint64_t seed = 0;         // synthetic backend

  // dim >= 2 for embed roles; endpoint present iff remote; path present for file.
  void validate() const;

  static ProviderConfig from_json(Role role, const nlohmann::json& j,
                                  const std::filesystem::path& base_dir);
};

// Frames of one video to embed or caption.
struct FrameRequest {
  std::string video_ref;
  double duration = 0.0;
  std::vector<double> timestamps;
};

// Contract shared by every model role. Public entry points validate inputs,
// bump the per-role call counter and check output shape; backends implement
// the do_* hooks. All operations are deterministic for synthetic and file
// backends and safe to call concurrently.
class Provider {
 public:
  virtual ~Provider() = default;

  virtual Backend backend() const noexcept = 0;
  // Whether embeddings come back L2-normalized. Consumers divide by norms
  // regardless.
  virtual bool normalized_output() const noexcept { return true; }

  std::vector<EmbeddingVector> embed_texts(std::span<const std::string> texts);
  std::vector<EmbeddingVector> embed_frames(const FrameRequest& request);
  std::vector<std::string> caption_frames(const FrameRequest& request);
  std::vector<CaptionCue> transcribe(const std::string& video_ref);
  std::string summarize_texts(std::span<const std::string> texts);

  std::uint64_t calls(Role role) const noexcept {
    return calls_[static_cast<std::size_t>(role)].load(std::memory_order_relaxed);
  }

 protected:
  // Expected embedding dimension, or 0 to accept whatever the backend returns
  // as long as it is consistent within a call.
  virtual std::size_t declared_dim() const noexcept = 0;

  virtual std::vector<EmbeddingVector> do_embed_texts(std::span<const std::string> texts) = 0;
  virtual std::vector<EmbeddingVector> do_embed_frames(const FrameRequest& request) = 0;
  virtual std::vector<std::string> do_caption_frames(const FrameRequest& request) = 0;
  virtual std::vector<CaptionCue> do_transcribe(const std::string& video_ref) = 0;
  virtual std::string do_summarize_texts(std::span<const std::string> texts) = 0;

  std::string context(Role role) const;

 private:
  void count(Role role) noexcept {
    calls_[static_cast<std::size_t>(role)].fetch_add(1, std::memory_order_relaxed);
  }
  void check_embeddings(Role role, std::size_t expected,
                        const std::vector<EmbeddingVector>& out) const;

  std::array<std::atomic<std::uint64_t>, kRoleCount> calls_{};
};

inline constexpr std::size_t kSyntheticSummaryLimit = 512;

// Hash-based stand-in for every role. Captions are "caption(<frame key>)",
// summaries are the space-joined inputs cut to 512 code points, transcripts
// come from registered fixtures (empty otherwise).
class SyntheticProvider final : public Provider {
 public:
  explicit SyntheticProvider(std::size_t dim = 64, std::uint64_t seed = 0);

  Backend backend() const noexcept override { return Backend::kSynthetic; }
  void set_transcript(std::string video_ref, std::vector<CaptionCue> cues);

 protected:
  std::size_t declared_dim() const noexcept override { return dim_; }
  std::vector<EmbeddingVector> do_embed_texts(std::span<const std::string> texts) override;
  std::vector<EmbeddingVector> do_embed_frames(const FrameRequest& request) override;
  std::vector<std::string> do_caption_frames(const FrameRequest& request) override;
  std::vector<CaptionCue> do_transcribe(const std::string& video_ref) override;
  std::string do_summarize_texts(std::span<const std::string> texts) override;

 private:
  std::size_t dim_;
  std::uint64_t seed_;
  std::map<std::string, std::vector<CaptionCue>> transcripts_;
};

// Precomputed outputs keyed by input: texts by their own string, frames by
// frame_key(), summaries by the inputs joined with '\n', transcripts by video ref.
struct FileSources {
  std::optional<FeatureTable> features;
  std::map<std::string, std::string> texts;
  std::map<std::string, std::vector<CaptionCue>> transcripts;
};

class FileProvider final : public Provider {
 public:
  explicit FileProvider(FileSources sources);

  Backend backend() const noexcept override { return Backend::kFile; }
  bool normalized_output() const noexcept override { return normalized_; }

 protected:
  std::size_t declared_dim() const noexcept override;
  std::vector<EmbeddingVector> do_embed_texts(std::span<const std::string> texts) override;
  std::vector<EmbeddingVector> do_embed_frames(const FrameRequest& request) override;
  std::vector<std::string> do_caption_frames(const FrameRequest& request) override;
  std::vector<CaptionCue> do_transcribe(const std::string& video_ref) override;
  std::string do_summarize_texts(std::span<const std::string> texts) override;

 private:
  const FeatureTable& features() const;
  const std::string& text(const std::string& key) const;

  FileSources sources_;
  bool normalized_ = true;
};

// Text table: line-delimited {"key": str, "text": str}.
std::map<std::string, std::string> load_text_table(const std::filesystem::path& path);
// Transcript table: {"<video_ref>": [{"start","end","text"}...], ...}.
std::map<std::string, std::vector<CaptionCue>> load_transcript_table(
    const std::filesystem::path& path);

struct RemoteOptions {
  std::string endpoint;  // http://host:port
  std::string model_name;
  std::size_t dim = 0;  // 0 accepts the service's dimension
  int max_retries = 3;
  std::chrono::milliseconds backoff_base{500};
  std::chrono::seconds timeout{30};
  std::size_t batch_size = 64;
};

// JSON-over-HTTP client for a model service; see README for the wire format.
class RemoteProvider final : public Provider {
 public:
  explicit RemoteProvider(RemoteOptions options);
  ~RemoteProvider() override;

  Backend backend() const noexcept override { return Backend::kRemote; }
  bool normalized_output() const noexcept override { return false; }

  // Number of HTTP attempts made, including retries.
  std::uint64_t requests() const noexcept { return requests_.load(); }

 protected:
  std::size_t declared_dim() const noexcept override { return options_.dim; }
  std::vector<EmbeddingVector> do_embed_texts(std::span<const std::string> texts) override;
  std::vector<EmbeddingVector> do_embed_frames(const FrameRequest& request) override;
  std::vector<std::string> do_caption_frames(const FrameRequest& request) override;
  std::vector<CaptionCue> do_transcribe(const std::string& video_ref) override;
  std::string do_summarize_texts(std::span<const std::string> texts) override;

 private:
  nlohmann::json post(Role role, const std::string& path, const nlohmann::json& body);
  std::vector<EmbeddingVector> parse_vectors(Role role, const nlohmann::json& reply,
                                             std::size_t expected);

  RemoteOptions options_;
  std::string host_;
  int port_ = 80;
  std::atomic<std::uint64_t> requests_{0};
};

std::shared_ptr<Provider> make_provider(const ProviderConfig& config);

// One provider per role. Roles may share a provider instance.
class ProviderSet {
 public:
  ProviderSet() = default;
  // Every role served by the same provider.
  explicit ProviderSet(std::shared_ptr<Provider> all);

  void set(Role role, std::shared_ptr<Provider> provider);
  Provider& get(Role role) const;  // throws InvalidInput if unset
  std::shared_ptr<Provider> shared(Role role) const;

  Provider& frame_embedder() const { return get(Role::kFrameEmbed); }
  Provider& text_embedder() const { return get(Role::kTextEmbed); }
  Provider& captioner() const { return get(Role::kCaption); }
  Provider& transcriber() const { return get(Role::kTranscribe); }
  Provider& summarizer() const { return get(Role::kSummarize); }

 private:
  std::array<std::shared_ptr<Provider>, kRoleCount> providers_{};
};

}  // namespace vsum
