#include "vgkit/records.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "vgkit/errors.hpp"
#include "vgkit/log.hpp"

namespace vgkit {

using nlohmann::json;

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  const auto dot = s.find('.');
  auto last = s.find_last_not_of('0');
  if (last == dot) --last;
  s.erase(last + 1);
  if (s == "-0") s = "0";
  return s;
}

std::string to_string(Frame frame) {
  return frame == Frame::augmented ? "augmented" : "original";
}

Frame frame_from_string(const std::string& s) {
  if (s == "augmented") return Frame::augmented;
  if (s == "original") return Frame::original;
  throw ValueError("unknown frame value '" + s + "' (expected augmented|original)");
}

namespace {

std::string quoted(const std::string& s) { return json(s).dump(); }

double number_field(const json& j, const char* key, long line) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number()) {
    throw ParseError(std::string("missing or non-numeric field '") + key + "'", line);
  }
  return it->get<double>();
}

int int_field(const json& j, const char* key, long line) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number_integer()) {
    throw ParseError(std::string("missing or non-integer field '") + key + "'", line);
  }
  return it->get<int>();
}

std::string string_field(const json& j, const char* key, long line) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw ParseError(std::string("missing or non-string field '") + key + "'", line);
  }
  return it->get<std::string>();
}

AugmentationSpec aug_from_json(const json& j, long line) {
  AugmentationSpec spec;
  spec.target_short = int_field(j, "target_short", line);
  spec.target_long_cap = int_field(j, "target_long_cap", line);
  const auto flip = j.find("hflip");
  if (flip == j.end() || !flip->is_boolean()) {
    throw ParseError("missing or non-boolean field 'hflip'", line);
  }
  spec.hflip = flip->get<bool>();
  spec.original.width = int_field(j, "orig_w", line);
  spec.original.height = int_field(j, "orig_h", line);
  if (!spec_is_valid(spec)) throw ParseError("invalid augmentation spec", line);
  return spec;
}

std::string aug_to_json(const AugmentationSpec& spec) {
  std::string s = "{\"target_short\":" + std::to_string(spec.target_short);
  s += ",\"target_long_cap\":" + std::to_string(spec.target_long_cap);
  s += spec.hflip ? ",\"hflip\":true" : ",\"hflip\":false";
  s += ",\"orig_w\":" + std::to_string(spec.original.width);
  s += ",\"orig_h\":" + std::to_string(spec.original.height);
  s += "}";
  return s;
}

json parse_json_line(const std::string& text, long line) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ParseError("not a JSON object", line);
  }
  return j;
}

}  // namespace

std::string to_jsonl(const PredictionRecord& r) {
  std::string s = "{\"sample_id\":" + quoted(r.sample_id);
  s += ",\"x1\":" + format_number(r.box.x1);
  s += ",\"y1\":" + format_number(r.box.y1);
  s += ",\"x2\":" + format_number(r.box.x2);
  s += ",\"y2\":" + format_number(r.box.y2);
  s += ",\"score\":" + format_number(r.score);
  if (r.aug) s += ",\"aug\":" + aug_to_json(*r.aug);
  if (r.frame) s += ",\"frame\":\"" + to_string(*r.frame) + "\"";
  if (r.winner_index) s += ",\"winner_index\":" + std::to_string(*r.winner_index);
  if (r.corrected_score) s += ",\"corrected_score\":" + format_number(*r.corrected_score);
  s += "}";
  return s;
}

PredictionRecord prediction_from_jsonl(const std::string& text, long line) {
  const json j = parse_json_line(text, line);

  PredictionRecord r;
  r.sample_id = string_field(j, "sample_id", line);
  if (r.sample_id.empty()) throw ParseError("sample_id must be nonempty", line);
  r.box.x1 = number_field(j, "x1", line);
  r.box.y1 = number_field(j, "y1", line);
  r.box.x2 = number_field(j, "x2", line);
  r.box.y2 = number_field(j, "y2", line);
  if (!box_is_valid(r.box)) {
    throw ParseError("box coordinates must be finite with x1<=x2, y1<=y2", line);
  }
  r.score = number_field(j, "score", line);
  if (!(r.score >= 0.0 && r.score <= 1.0)) {
    throw ParseError("score must lie in [0,1]", line);
  }
  if (const auto it = j.find("aug"); it != j.end()) {
    if (!it->is_object()) throw ParseError("'aug' must be an object", line);
    r.aug = aug_from_json(*it, line);
  }
  if (const auto it = j.find("frame"); it != j.end()) {
    if (!it->is_string()) throw ParseError("'frame' must be a string", line);
    try {
      r.frame = frame_from_string(it->get<std::string>());
    } catch (const ValueError& e) {
      throw ParseError(e.what(), line);
    }
  }
  if (const auto it = j.find("winner_index"); it != j.end()) {
    if (!it->is_number_unsigned()) throw ParseError("'winner_index' must be a nonnegative integer", line);
    r.winner_index = it->get<std::size_t>();
  }
  if (const auto it = j.find("corrected_score"); it != j.end()) {
    if (!it->is_number()) throw ParseError("'corrected_score' must be a number", line);
    r.corrected_score = it->get<double>();
  }
  return r;
}

PredictionFile load_predictions(const std::string& path, ParseMode mode) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open prediction file: " + path);

  PredictionFile out;
  std::string text;
  long line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty()) continue;
    try {
      out.rows.push_back(prediction_from_jsonl(text, line));
      out.lines.push_back(line);
    } catch (const ParseError& e) {
      if (mode == ParseMode::strict) throw;
      out.warnings.push_back({line, e.what()});
      log::warn(std::string(e.what()) + " (row skipped)");
    }
  }
  return out;
}

void save_predictions(const std::string& path, const std::vector<PredictionRecord>& rows) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot write prediction file: " + path);
  for (const auto& r : rows) out << to_jsonl(r) << '\n';
  if (!out) throw FileError("write failed: " + path);
}

}  // namespace vgkit
