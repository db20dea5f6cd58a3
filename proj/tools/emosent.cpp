// Command-line front end: lexicon construction, annotation runs, single-text
// analysis and dataset evaluation.

#include <iostream>

#include "CLI11.hpp"
#include "emosent/cli_commands.hpp"

namespace cli = emosent::cli;

namespace {

void add_aggregation_flags(CLI::App* cmd, cli::AggregationFlags& flags) {
    cmd->add_option("--strategy", flags.strategy, "Aggregation strategy")
        ->check(CLI::IsMember({"bsa", "dpm", "majority", "first", "consec", "repeat", "last",
                               "all"}))
        ->capture_default_str();
    cmd->add_option("--w-pos", flags.w_pos, "Positive weight override");
    cmd->add_option("--w-neu", flags.w_neu, "Neutral weight override");
    cmd->add_option("--w-neg", flags.w_neg, "Negative weight override");
    cmd->add_option("--theta", flags.theta, "Classification threshold override");
    cmd->add_option("--qualify-min", flags.qualify_min,
                    "Minimum run length / frequency for consec and repeat")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"emosent: emoji-based multilingual sentiment analysis toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Config file supplying flag defaults");

    std::string emoji_data = "data/emoji-test.txt";
    app.add_option("--emoji-data", emoji_data, "Unicode emoji sequence snapshot")
        ->capture_default_str();

    // segment
    cli::SegmentOptions seg;
    auto* seg_cmd = app.add_subcommand("segment", "Extract emoji tokens from text");
    std::string seg_text, seg_file;
    seg_cmd->add_option("--text", seg_text, "Text to segment");
    seg_cmd->add_option("--input", seg_file, "File with one text per line");

    // import-esr
    cli::ImportEsrOptions esr;
    auto* esr_cmd = app.add_subcommand("import-esr", "Build a lexicon from the ESR v1.0 CSV");
    esr_cmd->add_option("csv", esr.csv_path, "ESR CSV path")->required();
    esr_cmd->add_option("--out", esr.out_path, "Output lexicon path")->required();

    // build-dataset
    cli::BuildDatasetOptions build;
    auto* build_cmd =
        app.add_subcommand("build-dataset", "Build the emoji representation dataset");
    build_cmd->add_option("--unicode", build.unicode_path, "Unicode emoji data file");
    build_cmd->add_option("--descriptions", build.descriptions_path,
                          "TSV of hex key and description");
    build_cmd->add_option("--pixels", build.pixels_dir, "Directory of raster images");
    build_cmd->add_option("--out", build.out_path, "Output entries TSV")->required();

    // annotate
    cli::AnnotateOptions ann;
    auto* ann_cmd = app.add_subcommand("annotate", "Label emoji sentiment via an LLM");
    ann_cmd->add_option("--entries", ann.entries_path, "Representation dataset TSV")->required();
    ann_cmd->add_option("--combo", ann.combo, "Representation combo, e.g. pixel+icon+description")
        ->capture_default_str();
    ann_cmd->add_option("--transport", ann.transport, "Transport selection")
        ->check(CLI::IsMember({"live", "mock", "cache-only"}))
        ->capture_default_str();
    ann_cmd->add_option("--fixture", ann.fixture_path, "Mock transport fixture (JSONL)");
    ann_cmd->add_option("--cache", ann.cache_path, "On-disk reply cache");
    ann_cmd->add_option("--model", ann.model_id, "Model identifier")->capture_default_str();
    ann_cmd->add_option("--endpoint", ann.endpoint, "Chat-completions endpoint URL")
        ->capture_default_str();
    ann_cmd->add_option("--api-key-env", ann.api_key_env,
                        "Environment variable holding the API credential")
        ->capture_default_str();
    ann_cmd->add_option("--out", ann.out_lexicon, "Output lexicon path");
    ann_cmd->add_option("--records", ann.out_records, "Output annotation record log");
    ann_cmd->add_option("--parallel", ann.parallel, "Max in-flight requests")
        ->capture_default_str();

    // analyze
    cli::AnalyzeOptions ana;
    auto* ana_cmd = app.add_subcommand("analyze", "Sentiment of a single text from its emojis");
    ana_cmd->add_option("--text", ana.text, "Text to analyze")->required();
    ana_cmd->add_option("--lexicon", ana.lexicon_path, "Sentiment lexicon")->required();
    add_aggregation_flags(ana_cmd, ana.aggregation);

    // evaluate
    cli::EvaluateOptions eval;
    auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate a strategy on a labeled dataset");
    eval_cmd->add_option("--dataset", eval.dataset_path, "Labeled JSONL dataset")->required();
    eval_cmd->add_option("--lexicon", eval.lexicon_path, "Sentiment lexicon")->required();
    add_aggregation_flags(eval_cmd, eval.aggregation);
    eval_cmd->add_flag("--translated", eval.use_translated,
                       "Score the pre-translated text fields");
    eval_cmd->add_option("--buckets", eval.bucket_edges,
                         "Emoji-count bucket lower edges, e.g. 1,2,4,6")
        ->delimiter(',');
    eval_cmd->add_option("--out-prefix", eval.out_prefix,
                         "Write <prefix>.report.txt/.groups.csv/.confusion.csv");

    // compare-representations
    cli::CompareRepresentationsOptions cmp;
    auto* cmp_cmd = app.add_subcommand("compare-representations",
                                       "Match counts of annotations vs the ESR reference");
    cmp_cmd->add_option("--annotations", cmp.records_path, "Annotation record log")->required();
    cmp_cmd->add_option("--esr", cmp.esr_csv, "ESR v1.0 CSV")->required();
    cmp_cmd->add_option("--out", cmp.out_csv, "Output CSV (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    if (seg_cmd->parsed()) {
        seg.emoji_data = emoji_data;
        if (!seg_text.empty()) seg.text = seg_text;
        if (!seg_file.empty()) seg.input_file = seg_file;
        if (!seg.text && !seg.input_file) {
            std::cerr << "error: segment requires --text or --input\n";
            return cli::kInputError;
        }
        return cli::cmd_segment(seg, std::cout, std::cerr);
    }
    if (esr_cmd->parsed()) return cli::cmd_import_esr(esr, std::cout, std::cerr);
    if (build_cmd->parsed()) {
        if (build.unicode_path.empty()) build.unicode_path = emoji_data;
        return cli::cmd_build_dataset(build, std::cout, std::cerr);
    }
    if (ann_cmd->parsed()) return cli::cmd_annotate(ann, std::cout, std::cerr);
    if (ana_cmd->parsed()) {
        ana.emoji_data = emoji_data;
        return cli::cmd_analyze(ana, std::cout, std::cerr);
    }
    if (eval_cmd->parsed()) {
        eval.emoji_data = emoji_data;
        return cli::cmd_evaluate(eval, std::cout, std::cerr);
    }
    if (cmp_cmd->parsed()) return cli::cmd_compare_representations(cmp, std::cout, std::cerr);
    return cli::kInputError;
}
