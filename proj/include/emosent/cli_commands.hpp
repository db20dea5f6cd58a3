#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "emosent/aggregate.hpp"
#include "emosent/annotate.hpp"
#include "emosent/lexicon.hpp"

namespace emosent::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kTransportError = 2;

struct AggregationFlags {
    std::string strategy = "bsa";
    std::optional<int> w_pos, w_neu, w_neg, theta;
    int qualify_min = 2;

    // Throws on unknown strategy or invalid weight ordering.
    AggregationConfig to_config() const;
};

struct SegmentOptions {
    std::string emoji_data;  // emoji-test.txt snapshot
    std::optional<std::string> text;
    std::optional<std::filesystem::path> input_file;  // one text per line
};

struct ImportEsrOptions {
    std::filesystem::path csv_path;
    std::filesystem::path out_path;
};

struct BuildDatasetOptions {
    std::filesystem::path unicode_path;
    std::filesystem::path descriptions_path;  // optional (empty)
    std::filesystem::path pixels_dir;         // optional (empty)
    std::filesystem::path out_path;
};

struct AnnotateOptions {
    std::filesystem::path entries_path;  // built representation dataset (TSV)
    std::string combo = "icon";
    std::string transport = "mock";  // live | mock | cache-only
    std::filesystem::path fixture_path;
    std::filesystem::path cache_path;
    std::string model_id = "gpt-4o";
    std::string endpoint = "https://api.openai.com";
    std::string api_key_env = "EMOSENT_API_KEY";
    std::filesystem::path out_lexicon;
    std::filesystem::path out_records;  // optional annotation record log
    int parallel = 1;
};

struct AnalyzeOptions {
    std::string text;
    std::filesystem::path lexicon_path;
    std::string emoji_data;
    AggregationFlags aggregation;
};

struct EvaluateOptions {
    std::filesystem::path dataset_path;
    std::filesystem::path lexicon_path;
    std::string emoji_data;
    AggregationFlags aggregation;
    bool use_translated = false;
    std::vector<std::size_t> bucket_edges = {1, 2, 4, 6};
    std::filesystem::path out_prefix;  // writes <prefix>.report.txt etc.
};

struct CompareRepresentationsOptions {
    std::filesystem::path records_path;  // output of annotate --records
    std::filesystem::path esr_csv;
    std::filesystem::path out_csv;  // optional; stdout when empty
};

int cmd_segment(const SegmentOptions& opt, std::ostream& out, std::ostream& err);
int cmd_import_esr(const ImportEsrOptions& opt, std::ostream& out, std::ostream& err);
int cmd_build_dataset(const BuildDatasetOptions& opt, std::ostream& out, std::ostream& err);
int cmd_annotate(const AnnotateOptions& opt, std::ostream& out, std::ostream& err);
int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out, std::ostream& err);
int cmd_evaluate(const EvaluateOptions& opt, std::ostream& out, std::ostream& err);
int cmd_compare_representations(const CompareRepresentationsOptions& opt, std::ostream& out,
                                std::ostream& err);

// Reads a representation dataset written by cmd_build_dataset.
// TSV columns: hex key, icon, title, description, pixel_ref.
std::vector<EmojiEntry> read_entries_tsv(const std::filesystem::path& path);

// Annotation record log: hex key \t combo \t label \t model.
std::vector<AnnotationRecord> read_records_tsv(const std::filesystem::path& path);

}  // namespace emosent::cli
