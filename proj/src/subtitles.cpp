#include "vsum/subtitles.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "vsum/error.hpp"

namespace vsum {

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

std::vector<Line> split_lines(std::string_view payload) {
  if (payload.substr(0, 3) == "\xEF\xBB\xBF") payload.remove_prefix(3);
  std::vector<Line> lines;
  std::size_t number = 1;
  std::size_t pos = 0;
  while (pos <= payload.size()) {
    const auto nl = payload.find('\n', pos);
    auto line = payload.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back({number++, std::string(line)});
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return lines;
}

bool is_blank(const std::string& s) { return trim(s).empty(); }

// Parses "HH:MM:SS<sep>mmm"; hours are optional when allow_short_form is set.
std::optional<double> parse_timestamp(std::string_view s, char sep, bool allow_short_form) {
  std::vector<long> fields;
  std::size_t i = 0;
  auto read_digits = [&](std::size_t min_len, std::size_t max_len) -> std::optional<long> {
    const std::size_t begin = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t len = i - begin;
    if (len < min_len || len > max_len) return std::nullopt;
    return std::stol(std::string(s.substr(begin, len)));
  };
  for (;;) {
    auto v = read_digits(1, 9);
    if (!v) return std::nullopt;
    fields.push_back(*v);
    if (i < s.size() && s[i] == ':') {
      ++i;
      continue;
    }
    break;
  }
  if (i >= s.size() || s[i] != sep) return std::nullopt;
  ++i;
  auto millis = read_digits(3, 3);
  if (!millis || i != s.size()) return std::nullopt;
  long h = 0, m = 0, sec = 0;
  if (fields.size() == 3) {
    h = fields[0];
    m = fields[1];
    sec = fields[2];
  } else if (fields.size() == 2 && allow_short_form) {
    m = fields[0];
    sec = fields[1];
  } else {
    return std::nullopt;
  }
  if (m > 59 || sec > 59) return std::nullopt;
  return static_cast<double>(h * 3600 + m * 60 + sec) + static_cast<double>(*millis) / 1000.0;
}

TimeSpan parse_timing(const Line& line, SubtitleFormat format) {
  const auto arrow = line.text.find("-->");
  if (arrow == std::string::npos) throw ParseError("expected a cue timing line", line.number);
  const std::string lhs = trim(std::string_view(line.text).substr(0, arrow));
  std::string rhs = trim(std::string_view(line.text).substr(arrow + 3));
  if (format == SubtitleFormat::kVtt) {
    // Cue settings follow the end timestamp.
    const auto ws = rhs.find_first_of(" \t");
    if (ws != std::string::npos) rhs.resize(ws);
  }
  const char sep = format == SubtitleFormat::kSrt ? ',' : '.';
  const bool short_form = format == SubtitleFormat::kVtt;
  const auto start = parse_timestamp(lhs, sep, short_form);
  const auto end = parse_timestamp(rhs, sep, short_form);
  if (!start || !end) throw ParseError("malformed timestamp in '" + line.text + "'", line.number);
  if (!(*start < *end)) throw ParseError("cue ends before it starts", line.number);
  return TimeSpan(*start, *end);
}

std::string strip_vtt_tags(const std::string& s) {
  std::string out;
  bool in_tag = false;
  for (char c : s) {
    if (c == '<') {
      in_tag = true;
    } else if (c == '>' && in_tag) {
      in_tag = false;
    } else if (!in_tag) {
      out.push_back(c);
    }
  }
  return out;
}

std::string join_text(std::vector<Line>::const_iterator begin, std::vector<Line>::const_iterator end,
                      SubtitleFormat format) {
  std::string text;
  for (auto it = begin; it != end; ++it) {
    std::string part = trim(format == SubtitleFormat::kVtt ? strip_vtt_tags(it->text) : it->text);
    if (part.empty()) continue;
    if (!text.empty()) text.push_back(' ');
    text += part;
  }
  return text;
}

bool starts_with_word(const std::string& s, std::string_view word) {
  return s.rfind(word, 0) == 0 && (s.size() == word.size() || s[word.size()] == ' ' ||
                                   s[word.size()] == '\t');
}

}  // namespace

std::vector<CaptionCue> parse_subtitles(std::string_view payload, SubtitleFormat format) {
  const auto lines = split_lines(payload);
  std::vector<CaptionCue> cues;
  auto it = lines.begin();
  bool first_block = true;
  while (it != lines.end()) {
    while (it != lines.end() && is_blank(it->text)) ++it;
    if (it == lines.end()) break;
    auto block_end = std::find_if(it, lines.end(), [](const Line& l) { return is_blank(l.text); });

    if (format == SubtitleFormat::kVtt) {
      if (first_block) {
        first_block = false;
        if (!starts_with_word(it->text, "WEBVTT")) {
          throw ParseError("WebVTT payload must start with 'WEBVTT'", it->number);
        }
        it = block_end;
        continue;
      }
      if (starts_with_word(it->text, "NOTE") || starts_with_word(it->text, "STYLE") ||
          starts_with_word(it->text, "REGION")) {
        it = block_end;
        continue;
      }
      auto timing = it;
      if (timing->text.find("-->") == std::string::npos && std::next(timing) != block_end) {
        ++timing;  // cue identifier
      }
      const TimeSpan span = parse_timing(*timing, format);
      cues.push_back({span, join_text(std::next(timing), block_end, format)});
    } else {
      first_block = false;
      auto timing = it;
      const std::string head = trim(timing->text);
      if (!head.empty() && std::all_of(head.begin(), head.end(),
                                       [](unsigned char c) { return std::isdigit(c); })) {
        ++timing;  // cue number
        if (timing == block_end) throw ParseError("cue number without timing line", it->number);
      }
      const TimeSpan span = parse_timing(*timing, format);
      cues.push_back({span, join_text(std::next(timing), block_end, format)});
    }
    it = block_end;
  }
  return normalize_cues(std::move(cues));
}

std::vector<CaptionCue> load_subtitles(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  SubtitleFormat format;
  if (ext == ".srt") {
    format = SubtitleFormat::kSrt;
  } else if (ext == ".vtt") {
    format = SubtitleFormat::kVtt;
  } else {
    throw InvalidInput("unknown subtitle extension '" + ext + "' for " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open subtitle file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_subtitles(ss.str(), format);
  } catch (const ParseError& e) {
    throw ParseError::prefixed(path.string() + ": ", e);
  }
}

}  // namespace vsum
