#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rsod/ingest.hpp"
#include "rsod/lora.hpp"

namespace rsod {

// One training/eval line. `prompt` contains the "<image>" placeholder
// exactly once; `response` is a compact JSON array of
// {"bbox_2d":[x1,y1,x2,y2],"label":...} objects.
struct InstructSample {
    std::string id;
    std::string image;
    std::string prompt;
    std::string response;
};

enum class SplitMode { Official, Random };

struct SplitSpec {
    SplitMode mode = SplitMode::Random;
    double ratio = 0.8;  // train fraction, 0 < ratio < 1
    std::uint64_t seed = 0;
};

// The instruction sentence for the modality, ending with the "<image>"
// placeholder.
std::string render_prompt(Modality modality);

// Compact JSON array in reading order: ascending y1, ties by x1, remaining
// ties keep input order. Integral coordinates are emitted without a decimal
// point; key order is bbox_2d then label.
std::string serialize_response(std::vector<Detection> detections);

// Deterministic seeded partition: indices are shuffled with a Fisher-Yates
// pass driven by mt19937_64(seed) (j = next() % (i+1)); the first
// ceil(ratio*N) shuffled records form the train side. Both sides are
// returned in manifest order.
std::pair<std::vector<ImageRecord>, std::vector<ImageRecord>> split_random(
    const std::vector<ImageRecord>& records, const SplitSpec& spec);

struct BuildReport {
    std::string dataset;
    std::string modality;
    std::string prompt;
    Dims target;
    SplitSpec split;
    std::size_t train_samples = 0;
    std::size_t test_samples = 0;
    std::size_t boxes_emitted = 0;
    std::size_t boxes_dropped_degenerate = 0;
    std::map<std::string, std::size_t> per_class;  // emitted boxes per label
    std::vector<std::string> warnings;
    TrainConfig train_config;
};

struct BuiltDataset {
    std::string train_jsonl;
    std::string test_jsonl;
    BuildReport report;
};

// Rescales every record to `target`, renders prompts and responses, and
// partitions into train/test JSONL (one sample per line, LF endings,
// manifest order within each split). Degenerate post-rescale boxes are
// dropped and counted. Throws MissingOfficialSplit when mode==Official and
// a record is unsplit.
BuiltDataset build_dataset(const DatasetManifest& manifest, const SplitSpec& spec,
                           const Dims& target = Dims{644, 644},
                           const TrainConfig& train_config = TrainConfig{});

std::string report_to_json(const BuildReport& report);

// Parses a JSONL sample file back into samples. Throws MalformedJsonl.
std::vector<InstructSample> load_samples_jsonl(const std::string& text);

}  // namespace rsod
