#include <thread>

#include <httplib.h>

#include "vsum/error.hpp"
#include "vsum/providers.hpp"

namespace vsum {

using nlohmann::json;

namespace {

template <typename T>
std::vector<std::vector<T>> batches(std::span<const T> items, std::size_t size) {
  std::vector<std::vector<T>> out;
  for (std::size_t i = 0; i < items.size(); i += size) {
    const auto n = std::min(size, items.size() - i);
    out.emplace_back(items.begin() + i, items.begin() + i + n);
  }
  return out;
}

bool retryable(int status) { return status == 429 || status >= 500; }

}  // namespace

RemoteProvider::RemoteProvider(RemoteOptions options) : options_(std::move(options)) {
  if (options_.endpoint.empty()) throw InvalidInput("remote provider needs an endpoint");
  if (options_.batch_size == 0) throw InvalidInput("remote batch size must be positive");
  if (options_.max_retries < 0) throw InvalidInput("remote retry count must be non-negative");
}

RemoteProvider::~RemoteProvider() = default;

json RemoteProvider::post(Role role, const std::string& path, const json& body) {
  const std::string payload = body.dump();
  std::string last_error;
  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(options_.backoff_base * (1 << (attempt - 1)));
    httplib::Client client(options_.endpoint);
    client.set_connection_timeout(options_.timeout);
    client.set_read_timeout(options_.timeout);
    client.set_write_timeout(options_.timeout);
    ++requests_;
    auto res = client.Post(path, payload, "application/json");
    if (!res) {
      last_error = "transport failure: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      last_error = "HTTP " + std::to_string(res->status) + " from " + path;
      if (retryable(res->status)) continue;
      break;
    }
    try {
      return json::parse(res->body);
    } catch (const json::exception& e) {
      throw ProviderError(context(role) + ": invalid JSON from " + path + ": " + e.what());
    }
  }
  throw ProviderError(context(role) + ": " + last_error);
}

std::vector<EmbeddingVector> RemoteProvider::parse_vectors(Role role, const json& reply,
                                                           std::size_t expected) {
  try {
    const auto dim = reply.at("dim").get<std::size_t>();
    const auto& vectors = reply.at("vectors");
    if (vectors.size() != expected) {
      throw ProviderError(context(role) + ": expected " + std::to_string(expected) + " vectors, got " +
                          std::to_string(vectors.size()));
    }
    std::vector<EmbeddingVector> out;
    out.reserve(expected);
    for (const auto& v : vectors) {
      auto values = v.get<std::vector<double>>();
      if (values.size() != dim) {
        throw ProviderError(context(role) + ": vector length " + std::to_string(values.size()) +
                            " disagrees with dim " + std::to_string(dim));
      }
      out.emplace_back(std::move(values));
    }
    return out;
  } catch (const json::exception& e) {
    throw ProviderError(context(role) + ": malformed reply: " + e.what());
  } catch (const InvalidInput& e) {
    throw ProviderError(context(role) + ": " + e.what());
  }
}

std::vector<EmbeddingVector> RemoteProvider::do_embed_texts(std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  for (auto& batch : batches(texts, options_.batch_size)) {
    const auto reply = post(Role::kTextEmbed, "/v1/embed_text",
                            json{{"model", options_.model_name}, {"texts", batch}});
    auto part = parse_vectors(Role::kTextEmbed, reply, batch.size());
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<EmbeddingVector> RemoteProvider::do_embed_frames(const FrameRequest& request) {
  std::vector<EmbeddingVector> out;
  for (auto& batch : batches(std::span<const double>(request.timestamps), options_.batch_size)) {
    const auto reply = post(Role::kFrameEmbed, "/v1/embed_frames",
                            json{{"video_ref", request.video_ref}, {"timestamps", batch}});
    auto part = parse_vectors(Role::kFrameEmbed, reply, batch.size());
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<std::string> RemoteProvider::do_caption_frames(const FrameRequest& request) {
  std::vector<std::string> out;
  for (auto& batch : batches(std::span<const double>(request.timestamps), options_.batch_size)) {
    const auto reply = post(Role::kCaption, "/v1/caption",
                            json{{"video_ref", request.video_ref}, {"timestamps", batch}});
    try {
      auto texts = reply.at("texts").get<std::vector<std::string>>();
      if (texts.size() != batch.size()) {
        throw ProviderError(context(Role::kCaption) + ": caption count mismatch");
      }
      std::move(texts.begin(), texts.end(), std::back_inserter(out));
    } catch (const json::exception& e) {
      throw ProviderError(context(Role::kCaption) + ": malformed reply: " + e.what());
    }
  }
  return out;
}

std::vector<CaptionCue> RemoteProvider::do_transcribe(const std::string& video_ref) {
  const auto reply = post(Role::kTranscribe, "/v1/transcribe", json{{"video_ref", video_ref}});
  try {
    std::vector<CaptionCue> cues;
    for (const auto& c : reply.at("cues")) {
      cues.push_back({TimeSpan(c.at("start").get<double>(), c.at("end").get<double>()),
                      c.at("text").get<std::string>()});
    }
    return cues;
  } catch (const json::exception& e) {
    throw ProviderError(context(Role::kTranscribe) + ": malformed reply: " + e.what());
  } catch (const InvalidInput& e) {
    throw ProviderError(context(Role::kTranscribe) + ": " + e.what());
  }
}

std::string RemoteProvider::do_summarize_texts(std::span<const std::string> texts) {
  const auto reply = post(Role::kSummarize, "/v1/summarize",
                          json{{"texts", std::vector<std::string>(texts.begin(), texts.end())}});
  try {
    return reply.at("text").get<std::string>();
  } catch (const json::exception& e) {
    throw ProviderError(context(Role::kSummarize) + ": malformed reply: " + e.what());
  }
}

}  // namespace vsum
