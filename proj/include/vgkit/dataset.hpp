#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "vgkit/geometry.hpp"
#include "vgkit/io.hpp"

namespace vgkit {

/// One grounding sample: a question about an image, optionally labeled with
/// the box containing the visual answer.
struct GroundingInstance {
  std::string sample_id;
  std::string image_ref;
  ImageSize image_size;
  std::string question;
  std::optional<Box> gt_box;
  std::vector<std::string> paraphrases;
};

struct SceneGraphObject {
  std::string object_id;
  std::string name;
  Box box;
};

struct SceneGraphImage {
  ImageSize size;
  std::map<std::string, SceneGraphObject> objects;
};

/// image_id -> scene graph.
using SceneGraphMap = std::map<std::string, SceneGraphImage>;

/// One GQA question with the object ids its answer is grounded to.
struct GqaQuestionRecord {
  std::string question_id;
  std::string image_id;
  std::string text;
  std::vector<std::string> grounded_object_ids;
};

struct LoadResult {
  std::vector<GroundingInstance> instances;
  std::vector<Warning> warnings;
};

/// Reads a grounding dataset. `.csv` files are parsed as headered CSV
/// (Toloka-style column aliases accepted), everything else as JSONL.
/// Boxes are clipped to the image bounds with a warning.
LoadResult load_grounding_dataset(const std::string& path, ParseMode mode = ParseMode::strict);

/// Writes canonical grounding JSONL.
void save_grounding_dataset(const std::string& path,
                            const std::vector<GroundingInstance>& instances);

/// Canonical JSONL line for one instance (no trailing newline).
std::string to_jsonl(const GroundingInstance& inst);

GroundingInstance grounding_from_jsonl(const std::string& text, long line = 0);

struct GqaStats {
  std::size_t questions_total = 0;
  std::size_t retained = 0;
  std::size_t dropped_ambiguous = 0;    // grounded to more than one object
  std::size_t dropped_unannotated = 0;  // grounded to no object at all
  std::size_t dropped_dangling = 0;     // object or image id not in the scene graphs
  std::size_t images = 0;               // distinct images among retained questions
};

struct GqaConvertResult {
  std::vector<GroundingInstance> instances;  // sorted by question id
  GqaStats stats;
  std::vector<Warning> warnings;
};

/// Keeps exactly the questions grounded to a single scene-graph object and
/// emits that object's box as the ground truth.
GqaConvertResult convert_gqa(const SceneGraphMap& scene_graphs,
                             const std::vector<GqaQuestionRecord>& questions);

/// GQA-style scene graph JSON: image_id -> {width, height, objects:
/// {object_id -> {name, x, y, w, h}}}.
SceneGraphMap load_gqa_scene_graphs(const std::string& path);

/// GQA-style question JSON: question_id -> {question, imageId, annotations}.
/// Answer annotations take precedence over question annotations as the
/// grounding source.
std::vector<GqaQuestionRecord> load_gqa_questions(const std::string& path);

/// Seeded shuffle, then the last `val_count` instances become the validation
/// split. Throws ValueError when val_count exceeds the input size.
std::pair<std::vector<GroundingInstance>, std::vector<GroundingInstance>> split_dataset(
    const std::vector<GroundingInstance>& instances, std::size_t val_count,
    std::uint64_t seed);

/// With probability p picks a uniformly random paraphrase, otherwise returns
/// the original question. Instances without paraphrases always return the
/// original; the rng still advances by one draw either way.
std::string paraphrase_pick(const GroundingInstance& instance, double p,
                            std::mt19937_64& rng);

}  // namespace vgkit
