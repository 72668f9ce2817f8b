#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "vsum/timeline.hpp"

namespace vsum {

enum class SubtitleFormat { kSrt, kVtt };

// Parses SRT ("HH:MM:SS,mmm") or WebVTT ("[HH:]MM:SS.mmm") cues. Cue numbers,
// identifiers, NOTE/STYLE/REGION blocks and cue settings are ignored; multi-line
// text is joined with single spaces. The result is normalized as by
// normalize_cues. Throws ParseError with the 1-based line of a bad timing line.
std::vector<CaptionCue> parse_subtitles(std::string_view payload, SubtitleFormat format);

// Picks the format from the extension (.srt / .vtt).
std::vector<CaptionCue> load_subtitles(const std::filesystem::path& path);

}  // namespace vsum
