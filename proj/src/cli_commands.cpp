#include "emosent/cli_commands.hpp"

#include <memory>
#include <ostream>
#include <sstream>

#include "emosent/evaluate.hpp"
#include "emosent/io.hpp"
#include "json.hpp"

namespace emosent::cli {

namespace {

int report_input_error(std::ostream& err, const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
}

}  // namespace

AggregationConfig AggregationFlags::to_config() const {
    const auto parsed = strategy_from_name(strategy);
    if (!parsed) throw std::invalid_argument("unknown strategy '" + strategy + "'");
    AggregationConfig cfg = AggregationConfig::with_strategy(*parsed);
    if (w_pos) cfg.w_pos = *w_pos;
    if (w_neu) cfg.w_neu = *w_neu;
    if (w_neg) cfg.w_neg = *w_neg;
    if (theta) cfg.theta = *theta;
    cfg.qualify_min = qualify_min;
    cfg.validate();
    return cfg;
}

int cmd_segment(const SegmentOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        const EmojiIndex index = EmojiIndex::load(opt.emoji_data);
        const Segmenter segmenter(index);
        std::vector<std::string> texts;
        if (opt.text) texts.push_back(*opt.text);
        if (opt.input_file) {
            const std::string content = read_file(*opt.input_file);
            for (auto line : split_lines(content)) texts.emplace_back(line);
        }
        for (const auto& text : texts) {
            for (const auto& token : segmenter.segment(text)) {
                out << token.ordinal << '\t' << codepoints_to_hex(token.codepoints) << '\t'
                    << token.byte_offset << '\n';
            }
        }
        return kOk;
    } catch (const std::exception& e) {
        return report_input_error(err, e);
    }
}

int cmd_import_esr(const ImportEsrOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        const SentimentLexicon lexicon = import_esr(opt.csv_path);
        lexicon.write(opt.out_path);
        err << "imported " << lexicon.size() << " ESR entries to " << opt.out_path.string()
            << "\n";
        (void)out;
        return kOk;
    } catch (const std::exception& e) {
        return report_input_error(err, e);
    }
}

int cmd_build_dataset(const BuildDatasetOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        const auto dataset =
            build_representation_dataset(opt.unicode_path, opt.descriptions_path, opt.pixels_dir);
        std::string body;
        for (const auto& entry : dataset.entries) {
            body += entry.key.hex();
            body += '\t';
            body += entry.icon;
            body += '\t';
            body += escape_field(entry.title);
            body += '\t';
            body += escape_field(entry.description);
            body += '\t';
            body += entry.pixel_ref;
            body += '\n';
        }
        atomic_write_file(opt.out_path, body);
        out << dataset.completeness.report();
        return kOk;
    } catch (const std::exception& e) {
        return report_input_error(err, e);
    }
}

std::vector<EmojiEntry> read_entries_tsv(const std::filesystem::path& path) {
    std::vector<EmojiEntry> entries;
    const std::string content = read_file(path);
    std::size_t line_no = 0;
    for (auto line : split_lines(content)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_on(line, '\t');
        if (fields.size() != 5) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": expected 5 tab-separated fields");
        }
        EmojiEntry entry;
        entry.key.codepoints = hex_to_codepoints(fields[0]);
        entry.icon = std::string(fields[1]);
        entry.title = unescape_field(fields[2]);
        entry.description = unescape_field(fields[3]);
        entry.pixel_ref = std::string(fields[4]);
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::vector<AnnotationRecord> read_records_tsv(const std::filesystem::path& path) {
    std::vector<AnnotationRecord> records;
    const std::string content = read_file(path);
    std::size_t line_no = 0;
    for (auto line : split_lines(content)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_on(line, '\t');
        if (fields.size() != 4) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": expected 4 tab-separated fields");
        }
        AnnotationRecord record;
        record.key.codepoints = hex_to_codepoints(fields[0]);
        record.combo = RepresentationCombo::parse(fields[1]);
        const auto label = sentiment_from_word(fields[2]);
        if (!label) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": bad label '" + std::string(fields[2]) + "'");
        }
        record.label = *label;
        record.model_id = std::string(fields[3]);
        records.push_back(std::move(record));
    }
    return records;
}

int cmd_annotate(const AnnotateOptions& opt, std::ostream& out, std::ostream& err) {
    std::unique_ptr<Transport> transport;
    try {
        if (opt.transport == "mock") {
            if (opt.fixture_path.empty())
                throw std::invalid_argument("--transport mock requires --fixture");
            transport = std::make_unique<MockTransport>(MockTransport::from_fixture(opt.fixture_path));
        } else if (opt.transport == "live") {
            const char* key = std::getenv(opt.api_key_env.c_str());
            transport = std::make_unique<HttpTransport>(opt.endpoint, key ? key : "");
        } else if (opt.transport == "cache-only") {
            transport = std::make_unique<NullTransport>();
        } else {
            throw std::invalid_argument("unknown transport '" + opt.transport + "'");
        }
    } catch (const std::exception& e) {
        return report_input_error(err, e);
    }

    std::vector<EmojiEntry> entries;
    AnnotationCache cache;
    RepresentationCombo combo{1};
    try {
        entries = read_entries_tsv(opt.entries_path);
        combo = RepresentationCombo::parse(opt.combo);
        cache = opt.cache_path.empty() ? AnnotationCache()
                                       : AnnotationCache::open(opt.cache_path);
    } catch (const std::exception& e) {
        return report_input_error(err, e);
    }

    std::vector<AnnotationRecord> records;
    try {
        records = annotate_entries(entries, combo, *transport, cache, opt.model_id, opt.parallel);
    } catch (const TransportError& e) {
        err << "transport error: " << e.what() << "\n";
        return kTransportError;
    } catch (const std::exception& e) {
        return report_input_error(err, e);
    }

    try {
        if (!opt.out_records.empty()) {
            std::string body;
            for (const auto& record : records) {
                body += record.key.hex();
                body += '\t';
                body += record.combo.name();
                body += '\t';
                body += to_string(record.label);
                body += '\t';
                body += record.model_id;
                body += '\n';
            }
            atomic_write_file(opt.out_records, body);
        }
        if (!opt.out_lexicon.empty()) {
            std::map<NormalizedKey, LexiconValue> map;
            for (const auto& record : records) {
                map[record.key] =
                    LexiconValue{record.label, record.model_id + ":" + record.combo.name()};
            }
            SentimentLexicon(std::move(map)).write(opt.out_lexicon);
        }
    } catch (const std::exception& e) {
        return report_input_error(err, e);
    }

    std::size_t cached = 0;
    for (const auto& record : records) cached += record.cached ? 1 : 0;
    err << "annotated " << records.size() << " entries (" << cached << " from cache)\n";
    (void)out;
    return kOk;
}

int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        const EmojiIndex index = EmojiIndex::load(opt.emoji_data);
        const Segmenter segmenter(index);
        const SentimentLexicon lexicon = SentimentLexicon::load(opt.lexicon_path);
        const AggregationConfig cfg = opt.aggregation.to_config();
        const auto seq = resolve_sequence(segmenter, lexicon, opt.text);
        const auto outcome = aggregate(seq, cfg);

        nlohmann::ordered_json record;
        record["strategy"] = to_string(cfg.strategy);
        record["label"] = outcome.label ? to_string(*outcome.label) : "no_emoji";
        if (outcome.score) record["score"] = *outcome.score;
        record["emoji_count"] = seq.size() + seq.unknown_count;
        record["unknown_count"] = seq.unknown_count;
        out << record.dump() << "\n";
        return kOk;
    } catch (const std::exception& e) {
        return report_input_error(err, e);
    }
}

int cmd_evaluate(const EvaluateOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        const EmojiIndex index = EmojiIndex::load(opt.emoji_data);
        const Segmenter segmenter(index);
        const SentimentLexicon lexicon = SentimentLexicon::load(opt.lexicon_path);
        const AggregationConfig cfg = opt.aggregation.to_config();

        const auto loaded = read_dataset(opt.dataset_path);
        for (const auto& message : loaded.errors) err << "skipped row: " << message << "\n";
        if (loaded.rows.empty()) throw std::runtime_error("dataset has no parseable rows");

        emosent::EvaluateOptions eval_opt;
        eval_opt.use_translated = opt.use_translated;
        eval_opt.bucket_edges = opt.bucket_edges;
        auto report = evaluate_strategy(loaded.rows, segmenter, lexicon, cfg, eval_opt);
        report.row_errors += static_cast<long>(loaded.errors.size());

        if (opt.out_prefix.empty()) {
            out << report.to_text();
        } else {
            const auto prefix = opt.out_prefix.string();
            atomic_write_file(prefix + ".report.txt", report.to_text());
            atomic_write_file(prefix + ".groups.csv", report.groups_csv());
            atomic_write_file(prefix + ".confusion.csv", report.matrix.to_csv());
            err << "wrote " << prefix << ".report.txt, .groups.csv, .confusion.csv\n";
        }
        return kOk;
    } catch (const std::exception& e) {
        return report_input_error(err, e);
    }
}

int cmd_compare_representations(const CompareRepresentationsOptions& opt, std::ostream& out,
                                std::ostream& err) {
    try {
        const auto records = read_records_tsv(opt.records_path);
        const SentimentLexicon reference = import_esr(opt.esr_csv);
        const auto comparison = compare_representations(records, reference);
        if (comparison.population_mismatch) {
            err << "warning: annotated keys and reference population are disjoint\n";
        }
        if (opt.out_csv.empty()) {
            out << comparison.to_csv();
        } else {
            atomic_write_file(opt.out_csv, comparison.to_csv());
            err << "wrote " << opt.out_csv.string() << "\n";
        }
        return kOk;
    } catch (const std::exception& e) {
        return report_input_error(err, e);
    }
}

}  // namespace emosent::cli
