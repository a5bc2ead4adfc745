#include "vgkit/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "vgkit/errors.hpp"
#include "vgkit/log.hpp"
#include "vgkit/random.hpp"

namespace vgkit {

using nlohmann::json;

namespace {

std::string quoted(const std::string& s) { return json(s).dump(); }

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Clips gt_box to the image, recording a warning when the box actually moved.
void clip_gt_box(GroundingInstance& inst, long line, std::vector<Warning>* warnings) {
  if (!inst.gt_box) return;
  const Box clipped = clip_box(*inst.gt_box, inst.image_size);
  if (!(clipped == *inst.gt_box)) {
    if (warnings != nullptr) {
      warnings->push_back({line, "sample '" + inst.sample_id + "': box clipped to image bounds"});
      log::warn("sample '" + inst.sample_id + "': box clipped to image bounds");
    }
    inst.gt_box = clipped;
  }
}

// ---------------------------------------------------------------------------
// JSONL ingestion

json parse_object(const std::string& text, long line) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError("not a JSON object", line);
  return j;
}

std::string str_field(const json& j, const char* key, long line) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw ParseError(std::string("missing or non-string field '") + key + "'", line);
  }
  return it->get<std::string>();
}

double num_field(const json& j, const char* key, long line) {
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

Box box_from_json(const json& j, long line) {
  Box b{num_field(j, "x1", line), num_field(j, "y1", line), num_field(j, "x2", line),
        num_field(j, "y2", line)};
  if (!box_is_valid(b)) {
    throw ParseError("box coordinates must be finite with x1<=x2, y1<=y2", line);
  }
  return b;
}

// ---------------------------------------------------------------------------
// CSV ingestion (Toloka-style)

std::vector<std::string> split_csv_line(const std::string& text, long line) {
  std::vector<std::string> fields;
  std::string cur;
  bool in_quotes = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c == '\r' && i + 1 == text.size()) {
      // tolerate CRLF
    } else {
      cur += c;
    }
  }
  if (in_quotes) throw ParseError("unterminated quoted CSV field", line);
  fields.push_back(std::move(cur));
  return fields;
}

struct CsvLayout {
  int sample_id = -1;
  int image_ref = -1;
  int width = -1;
  int height = -1;
  int question = -1;
  int x1 = -1, y1 = -1, x2 = -1, y2 = -1;
};

CsvLayout parse_csv_header(const std::vector<std::string>& header) {
  CsvLayout layout;
  for (int i = 0; i < static_cast<int>(header.size()); ++i) {
    const std::string& name = header[i];
    if (name == "sample_id" || name == "id") layout.sample_id = i;
    else if (name == "image_ref" || name == "image" || name == "image_url") layout.image_ref = i;
    else if (name == "width") layout.width = i;
    else if (name == "height") layout.height = i;
    else if (name == "question") layout.question = i;
    else if (name == "x1" || name == "left") layout.x1 = i;
    else if (name == "y1" || name == "top") layout.y1 = i;
    else if (name == "x2" || name == "right") layout.x2 = i;
    else if (name == "y2" || name == "bottom") layout.y2 = i;
  }
  if (layout.image_ref < 0 || layout.width < 0 || layout.height < 0 || layout.question < 0) {
    throw ParseError("CSV header must name image, width, height and question columns", 1);
  }
  const int box_cols = (layout.x1 >= 0) + (layout.y1 >= 0) + (layout.x2 >= 0) + (layout.y2 >= 0);
  if (box_cols != 0 && box_cols != 4) {
    throw ParseError("CSV header names only part of a box (need all of x1,y1,x2,y2)", 1);
  }
  return layout;
}

double parse_double(const std::string& s, const char* what, long line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("cannot parse ") + what + " from '" + s + "'", line);
  }
}

int parse_int(const std::string& s, const char* what, long line) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("cannot parse ") + what + " from '" + s + "'", line);
  }
}

GroundingInstance instance_from_csv(const std::vector<std::string>& fields,
                                    const CsvLayout& layout, long line, long data_row) {
  auto field = [&](int idx, const char* what) -> const std::string& {
    if (idx < 0 || idx >= static_cast<int>(fields.size())) {
      throw ParseError(std::string("row has no ") + what + " column", line);
    }
    return fields[static_cast<std::size_t>(idx)];
  };

  GroundingInstance inst;
  inst.sample_id = layout.sample_id >= 0 ? field(layout.sample_id, "sample_id")
                                         : "row" + std::to_string(data_row);
  if (inst.sample_id.empty()) throw ParseError("sample_id must be nonempty", line);
  inst.image_ref = field(layout.image_ref, "image");
  inst.image_size.width = parse_int(field(layout.width, "width"), "width", line);
  inst.image_size.height = parse_int(field(layout.height, "height"), "height", line);
  if (!size_is_valid(inst.image_size)) throw ParseError("image size must be at least 1x1", line);
  inst.question = field(layout.question, "question");
  if (inst.question.empty()) throw ParseError("question must be nonempty", line);
  if (layout.x1 >= 0) {
    Box b{parse_double(field(layout.x1, "x1"), "x1", line),
          parse_double(field(layout.y1, "y1"), "y1", line),
          parse_double(field(layout.x2, "x2"), "x2", line),
          parse_double(field(layout.y2, "y2"), "y2", line)};
    if (!box_is_valid(b)) {
      throw ParseError("box coordinates must be finite with x1<=x2, y1<=y2", line);
    }
    inst.gt_box = b;
  }
  return inst;
}

}  // namespace

std::string to_jsonl(const GroundingInstance& inst) {
  std::string s = "{\"sample_id\":" + quoted(inst.sample_id);
  s += ",\"image_ref\":" + quoted(inst.image_ref);
  s += ",\"image_size\":{\"width\":" + std::to_string(inst.image_size.width);
  s += ",\"height\":" + std::to_string(inst.image_size.height) + "}";
  s += ",\"question\":" + quoted(inst.question);
  if (inst.gt_box) {
    s += ",\"gt_box\":{\"x1\":" + format_number(inst.gt_box->x1);
    s += ",\"y1\":" + format_number(inst.gt_box->y1);
    s += ",\"x2\":" + format_number(inst.gt_box->x2);
    s += ",\"y2\":" + format_number(inst.gt_box->y2) + "}";
  }
  if (!inst.paraphrases.empty()) {
    s += ",\"paraphrases\":[";
    for (std::size_t i = 0; i < inst.paraphrases.size(); ++i) {
      if (i > 0) s += ",";
      s += quoted(inst.paraphrases[i]);
    }
    s += "]";
  }
  s += "}";
  return s;
}

GroundingInstance grounding_from_jsonl(const std::string& text, long line) {
  const json j = parse_object(text, line);

  GroundingInstance inst;
  inst.sample_id = str_field(j, "sample_id", line);
  if (inst.sample_id.empty()) throw ParseError("sample_id must be nonempty", line);
  inst.image_ref = str_field(j, "image_ref", line);
  const auto size_it = j.find("image_size");
  if (size_it == j.end() || !size_it->is_object()) {
    throw ParseError("missing or non-object field 'image_size'", line);
  }
  inst.image_size.width = int_field(*size_it, "width", line);
  inst.image_size.height = int_field(*size_it, "height", line);
  if (!size_is_valid(inst.image_size)) throw ParseError("image size must be at least 1x1", line);
  inst.question = str_field(j, "question", line);
  if (inst.question.empty()) throw ParseError("question must be nonempty", line);
  if (const auto it = j.find("gt_box"); it != j.end()) {
    if (!it->is_object()) throw ParseError("'gt_box' must be an object", line);
    inst.gt_box = box_from_json(*it, line);
  }
  if (const auto it = j.find("paraphrases"); it != j.end()) {
    if (!it->is_array()) throw ParseError("'paraphrases' must be an array", line);
    for (const auto& p : *it) {
      if (!p.is_string()) throw ParseError("'paraphrases' entries must be strings", line);
      inst.paraphrases.push_back(p.get<std::string>());
    }
  }
  return inst;
}

LoadResult load_grounding_dataset(const std::string& path, ParseMode mode) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open dataset file: " + path);

  const bool csv = ends_with(path, ".csv");
  LoadResult out;
  std::unordered_map<std::string, std::size_t> index_by_id;

  auto add_instance = [&](GroundingInstance inst, long line) {
    clip_gt_box(inst, line, &out.warnings);
    const auto it = index_by_id.find(inst.sample_id);
    if (it != index_by_id.end()) {
      if (mode == ParseMode::strict) {
        throw ParseError("duplicate sample_id '" + inst.sample_id + "'", line);
      }
      out.warnings.push_back({line, "duplicate sample_id '" + inst.sample_id + "' (last row wins)"});
      log::warn("duplicate sample_id '" + inst.sample_id + "' (last row wins)");
      out.instances[it->second] = std::move(inst);
      return;
    }
    index_by_id.emplace(inst.sample_id, out.instances.size());
    out.instances.push_back(std::move(inst));
  };

  std::string text;
  long line = 0;
  CsvLayout layout;
  long data_row = 0;
  while (std::getline(in, text)) {
    ++line;
    if (csv && line == 1) {
      layout = parse_csv_header(split_csv_line(text, line));
      continue;
    }
    if (text.empty()) continue;
    try {
      ++data_row;
      if (csv) {
        add_instance(instance_from_csv(split_csv_line(text, line), layout, line, data_row), line);
      } else {
        add_instance(grounding_from_jsonl(text, line), line);
      }
    } catch (const ParseError& e) {
      if (mode == ParseMode::strict) throw;
      out.warnings.push_back({line, e.what()});
      log::warn(std::string(e.what()) + " (row skipped)");
    }
  }
  return out;
}

void save_grounding_dataset(const std::string& path,
                            const std::vector<GroundingInstance>& instances) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot write dataset file: " + path);
  for (const auto& inst : instances) out << to_jsonl(inst) << '\n';
  if (!out) throw FileError("write failed: " + path);
}

// ---------------------------------------------------------------------------
// GQA conversion

GqaConvertResult convert_gqa(const SceneGraphMap& scene_graphs,
                             const std::vector<GqaQuestionRecord>& questions) {
  std::vector<const GqaQuestionRecord*> sorted;
  sorted.reserve(questions.size());
  for (const auto& q : questions) sorted.push_back(&q);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* a, const auto* b) { return a->question_id < b->question_id; });

  GqaConvertResult out;
  out.stats.questions_total = questions.size();
  std::set<std::string> retained_images;

  for (const auto* q : sorted) {
    std::vector<std::string> distinct;
    for (const auto& oid : q->grounded_object_ids) {
      if (std::find(distinct.begin(), distinct.end(), oid) == distinct.end()) {
        distinct.push_back(oid);
      }
    }
    if (distinct.empty()) {
      ++out.stats.dropped_unannotated;
      continue;
    }
    if (distinct.size() > 1) {
      ++out.stats.dropped_ambiguous;
      continue;
    }

    auto dangling = [&](const std::string& what) {
      ++out.stats.dropped_dangling;
      out.warnings.push_back({0, "question '" + q->question_id + "': " + what});
      log::warn(out.warnings.back().message);
    };

    const auto graph_it = scene_graphs.find(q->image_id);
    if (graph_it == scene_graphs.end()) {
      dangling("image '" + q->image_id + "' not in scene graphs");
      continue;
    }
    const auto obj_it = graph_it->second.objects.find(distinct.front());
    if (obj_it == graph_it->second.objects.end()) {
      dangling("object '" + distinct.front() + "' not in scene graph of image '" + q->image_id + "'");
      continue;
    }

    GroundingInstance inst;
    inst.sample_id = q->question_id;
    inst.image_ref = q->image_id;
    inst.image_size = graph_it->second.size;
    inst.question = q->text;
    inst.gt_box = obj_it->second.box;
    clip_gt_box(inst, 0, &out.warnings);

    retained_images.insert(q->image_id);
    ++out.stats.retained;
    out.instances.push_back(std::move(inst));
  }

  out.stats.images = retained_images.size();
  return out;
}

SceneGraphMap load_gqa_scene_graphs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open scene graph file: " + path);
  json root = json::parse(in, nullptr, false);
  if (root.is_discarded() || !root.is_object()) {
    throw ParseError("scene graph file is not a JSON object: " + path);
  }

  SceneGraphMap graphs;
  for (const auto& [image_id, graph] : root.items()) {
    if (!graph.is_object()) throw ParseError("scene graph of image '" + image_id + "' is not an object");
    SceneGraphImage img;
    img.size.width = int_field(graph, "width", 0);
    img.size.height = int_field(graph, "height", 0);
    if (!size_is_valid(img.size)) {
      throw ParseError("image '" + image_id + "' has an invalid size");
    }
    if (const auto it = graph.find("objects"); it != graph.end()) {
      if (!it->is_object()) throw ParseError("'objects' of image '" + image_id + "' is not an object");
      for (const auto& [object_id, obj] : it->items()) {
        if (!obj.is_object()) throw ParseError("object '" + object_id + "' is not an object");
        SceneGraphObject sg;
        sg.object_id = object_id;
        if (const auto name = obj.find("name"); name != obj.end() && name->is_string()) {
          sg.name = name->get<std::string>();
        }
        const double x = num_field(obj, "x", 0);
        const double y = num_field(obj, "y", 0);
        const double w = num_field(obj, "w", 0);
        const double h = num_field(obj, "h", 0);
        if (w < 0.0 || h < 0.0) {
          throw ParseError("object '" + object_id + "' has negative dimensions");
        }
        sg.box = Box{x, y, x + w, y + h};
        img.objects.emplace(object_id, std::move(sg));
      }
    }
    graphs.emplace(image_id, std::move(img));
  }
  return graphs;
}

std::vector<GqaQuestionRecord> load_gqa_questions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open question file: " + path);
  json root = json::parse(in, nullptr, false);
  if (root.is_discarded() || !root.is_object()) {
    throw ParseError("question file is not a JSON object: " + path);
  }

  auto annotation_ids = [](const json& annotations, const char* key,
                           std::vector<std::string>& out_ids) {
    const auto it = annotations.find(key);
    if (it == annotations.end() || !it->is_object()) return;
    for (const auto& [span, value] : it->items()) {
      (void)span;
      if (!value.is_string()) {
        throw ParseError(std::string("annotation values under '") + key + "' must be object-id strings");
      }
      out_ids.push_back(value.get<std::string>());
    }
  };

  std::vector<GqaQuestionRecord> questions;
  for (const auto& [question_id, q] : root.items()) {
    if (!q.is_object()) throw ParseError("question '" + question_id + "' is not an object");
    GqaQuestionRecord rec;
    rec.question_id = question_id;
    if (q.contains("imageId")) rec.image_id = str_field(q, "imageId", 0);
    else rec.image_id = str_field(q, "image_id", 0);
    if (q.contains("question")) rec.text = str_field(q, "question", 0);
    else rec.text = str_field(q, "text", 0);
    if (rec.text.empty()) throw ParseError("question '" + question_id + "' has empty text");
    if (const auto it = q.find("annotations"); it != q.end() && it->is_object()) {
      // the answer's object is the grounding target; fall back to the
      // question annotations when no answer annotation exists
      annotation_ids(*it, "answer", rec.grounded_object_ids);
      if (rec.grounded_object_ids.empty()) {
        annotation_ids(*it, "question", rec.grounded_object_ids);
      }
    }
    questions.push_back(std::move(rec));
  }
  return questions;
}

// ---------------------------------------------------------------------------
// Splitting and paraphrase augmentation

std::pair<std::vector<GroundingInstance>, std::vector<GroundingInstance>> split_dataset(
    const std::vector<GroundingInstance>& instances, std::size_t val_count,
    std::uint64_t seed) {
  if (val_count > instances.size()) {
    throw ValueError("val_count (" + std::to_string(val_count) + ") exceeds dataset size (" +
                     std::to_string(instances.size()) + ")");
  }
  std::vector<GroundingInstance> shuffled = instances;
  std::mt19937_64 rng(seed);
  seeded_shuffle(shuffled, rng);

  std::vector<GroundingInstance> val(shuffled.end() - static_cast<std::ptrdiff_t>(val_count),
                                     shuffled.end());
  shuffled.resize(shuffled.size() - val_count);
  return {std::move(shuffled), std::move(val)};
}

std::string paraphrase_pick(const GroundingInstance& instance, double p,
                            std::mt19937_64& rng) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    throw ValueError("paraphrase probability must lie in [0,1]");
  }
  const double u = uniform_unit(rng);
  if (u < p && !instance.paraphrases.empty()) {
    const auto idx = bounded_index(rng, instance.paraphrases.size());
    return instance.paraphrases[static_cast<std::size_t>(idx)];
  }
  return instance.question;
}

}  // namespace vgkit
