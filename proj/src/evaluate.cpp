#include "emosent/evaluate.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "emosent/io.hpp"
#include "json.hpp"

namespace emosent {

std::string format_fraction(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    return buf;
}

DatasetLoadResult read_dataset(const std::filesystem::path& path) {
    DatasetLoadResult result;
    const std::string content = read_file(path);
    std::size_t line_no = 0;
    for (auto line : split_lines(content)) {
        ++line_no;
        if (line.empty()) continue;
        const auto where = path.string() + ":" + std::to_string(line_no);
        try {
            const auto row = nlohmann::json::parse(line);
            LabeledText item;
            item.id = row.at("id").get<std::string>();
            item.text = row.at("text").get<std::string>();
            item.language = row.value("lang", "");
            item.country = row.value("country", "");
            if (row.contains("truth") && !row["truth"].is_null()) {
                const auto word = row["truth"].get<std::string>();
                const auto sentiment = sentiment_from_word(word);
                if (!sentiment) throw std::runtime_error("bad truth word '" + word + "'");
                item.ground_truth = *sentiment;
            }
            if (row.contains("translated_text") && !row["translated_text"].is_null()) {
                item.translated_text = row["translated_text"].get<std::string>();
            }
            if (row.contains("translated_truth") && !row["translated_truth"].is_null()) {
                const auto word = row["translated_truth"].get<std::string>();
                const auto sentiment = sentiment_from_word(word);
                if (!sentiment)
                    throw std::runtime_error("bad translated_truth word '" + word + "'");
                item.translated_truth = *sentiment;
            }
            result.rows.push_back(std::move(item));
        } catch (const std::exception& e) {
            result.errors.push_back(where + ": " + e.what());
        }
    }
    return result;
}

long ConfusionMatrix::total() const {
    long sum = 0;
    for (const auto& row : counts_)
        for (long c : row) sum += c;
    return sum;
}

long ConfusionMatrix::trace() const {
    return counts_[0][0] + counts_[1][1] + counts_[2][2];
}

double ConfusionMatrix::accuracy() const {
    const long n = total();
    if (n == 0) throw std::domain_error("accuracy undefined on an empty confusion matrix");
    return static_cast<double>(trace()) / static_cast<double>(n);
}

std::string ConfusionMatrix::to_csv() const {
    std::ostringstream out;
    out << "truth\\pred,positive,neutral,negative\n";
    for (int r = 0; r < 3; ++r) {
        out << to_string(class_at(r));
        for (int c = 0; c < 3; ++c) out << ',' << counts_[r][c];
        out << '\n';
    }
    return out.str();
}

ConfusionMatrix confusion(const std::vector<Sentiment>& predicted,
                          const std::vector<Sentiment>& truth) {
    if (predicted.size() != truth.size()) {
        throw std::invalid_argument("prediction/truth length mismatch: " +
                                    std::to_string(predicted.size()) + " vs " +
                                    std::to_string(truth.size()));
    }
    ConfusionMatrix m;
    for (std::size_t i = 0; i < predicted.size(); ++i) m.add(truth[i], predicted[i]);
    return m;
}

std::array<std::optional<double>, 3> f1_per_class(const ConfusionMatrix& matrix) {
    std::array<std::optional<double>, 3> out{};
    for (int c = 0; c < 3; ++c) {
        const auto cls = ConfusionMatrix::class_at(c);
        long tp = matrix.at(cls, cls);
        long fp = 0, fn = 0;
        for (int other = 0; other < 3; ++other) {
            if (other == c) continue;
            fp += matrix.at(ConfusionMatrix::class_at(other), cls);
            fn += matrix.at(cls, ConfusionMatrix::class_at(other));
        }
        if (tp + fp + fn == 0) continue;  // class absent: undefined, not zero
        out[c] = 2.0 * tp / static_cast<double>(2 * tp + fp + fn);
    }
    return out;
}

std::string Bucket::label() const {
    if (!hi) return std::to_string(lo) + "+";
    if (*hi == lo) return std::to_string(lo);
    return std::to_string(lo) + "-" + std::to_string(*hi);
}

std::vector<Bucket> make_buckets(const std::vector<std::size_t>& edges) {
    if (edges.empty()) throw std::invalid_argument("bucket edges must be non-empty");
    if (!std::is_sorted(edges.begin(), edges.end()) ||
        std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
        throw std::invalid_argument("bucket edges must be strictly increasing");
    }
    std::vector<Bucket> buckets;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        Bucket b;
        b.lo = edges[i];
        if (i + 1 < edges.size()) b.hi = edges[i + 1] - 1;
        buckets.push_back(b);
    }
    return buckets;
}

SentimentSequence resolve_sequence(const Segmenter& segmenter, const SentimentLexicon& lexicon,
                                   std::string_view text) {
    SentimentSequence seq;
    for (const auto& token : segmenter.segment(text)) {
        const auto key = normalize(token);
        if (const auto sentiment = lexicon.lookup(key)) {
            seq.tokens.emplace_back(key, *sentiment);
        } else {
            ++seq.unknown_count;
        }
    }
    return seq;
}

EvaluationReport evaluate_strategy(const std::vector<LabeledText>& dataset,
                                   const Segmenter& segmenter, const SentimentLexicon& lexicon,
                                   const AggregationConfig& cfg, const EvaluateOptions& options) {
    if (dataset.empty()) throw std::invalid_argument("dataset is empty");
    cfg.validate();

    EvaluationReport report;
    report.strategy = cfg.strategy;
    report.config = cfg;
    report.used_translated = options.use_translated;
    report.buckets = make_buckets(options.bucket_edges);

    for (const auto& row : dataset) {
        const std::string* text = &row.text;
        std::optional<Sentiment> truth = row.ground_truth;
        if (options.use_translated) {
            if (!row.translated_text || !row.translated_truth) {
                ++report.excluded_missing_truth;
                continue;
            }
            text = &row.translated_text.value();
            truth = row.translated_truth;
        }
        if (!truth) {
            ++report.excluded_missing_truth;
            continue;
        }

        SentimentSequence seq;
        try {
            seq = resolve_sequence(segmenter, lexicon, *text);
        } catch (const Utf8Error&) {
            ++report.row_errors;
            continue;
        }
        const std::size_t emoji_count = seq.size() + seq.unknown_count;
        const auto outcome = aggregate(seq, cfg);
        if (outcome.no_emoji()) {
            ++report.excluded_no_emoji;
            continue;
        }

        const bool correct = (*outcome.label == *truth);
        report.matrix.add(*truth, *outcome.label);
        ++report.evaluated;

        auto& lang = report.per_language[row.language];
        ++lang.rows;
        auto& country = report.per_country[row.country];
        ++country.rows;
        if (correct) {
            ++lang.correct;
            ++country.correct;
        }

        auto* bucket = &report.buckets.front();  // counts below the first edge clamp down
        for (auto it = report.buckets.rbegin(); it != report.buckets.rend(); ++it) {
            if (emoji_count >= it->lo) {
                bucket = &*it;
                break;
            }
        }
        ++bucket->rows;
        if (correct) ++bucket->correct;
    }

    if (report.evaluated > 0) {
        report.accuracy = report.matrix.accuracy();
        report.f1 = f1_per_class(report.matrix);
    }
    if (!report.per_country.empty()) {
        double sum = 0;
        for (const auto& [name, stats] : report.per_country) sum += stats.accuracy();
        report.macro_accuracy = sum / static_cast<double>(report.per_country.size());
    }
    return report;
}

std::string EvaluationReport::to_text() const {
    std::ostringstream out;
    out << "strategy: " << to_string(strategy) << "\n";
    out << "weights: (" << config.w_pos << ", " << config.w_neu << ", " << config.w_neg << ")"
        << " theta: " << config.theta << " qualify_min: " << config.qualify_min << "\n";
    out << "text: " << (used_translated ? "translated" : "original") << "\n";
    out << "evaluated rows: " << evaluated << "\n";
    out << "excluded (no emoji): " << excluded_no_emoji << "\n";
    out << "excluded (missing truth): " << excluded_missing_truth << "\n";
    out << "row errors: " << row_errors << "\n";
    out << "accuracy (micro): " << (evaluated ? format_fraction(accuracy) : "undefined") << "\n";
    out << "accuracy (macro over countries): "
        << (per_country.empty() ? "undefined" : format_fraction(macro_accuracy)) << "\n";
    for (int c = 0; c < 3; ++c) {
        out << "f1 " << to_string(ConfusionMatrix::class_at(c)) << ": "
            << (f1[c] ? format_fraction(*f1[c]) : "undefined") << "\n";
    }
    out << "\nconfusion matrix:\n" << matrix.to_csv();
    out << "\nemoji-count buckets:\n";
    for (const auto& b : buckets) {
        out << "  [" << b.label() << "] rows: " << b.rows << " accuracy: "
            << (b.rows ? format_fraction(static_cast<double>(b.correct) / b.rows) : "undefined")
            << "\n";
    }
    return out.str();
}

std::string EvaluationReport::groups_csv() const {
    std::ostringstream out;
    out << "kind,group,rows,correct,accuracy\n";
    for (const auto& [name, stats] : per_language) {
        out << "language," << name << ',' << stats.rows << ',' << stats.correct << ','
            << format_fraction(stats.accuracy()) << '\n';
    }
    for (const auto& [name, stats] : per_country) {
        out << "country," << name << ',' << stats.rows << ',' << stats.correct << ','
            << format_fraction(stats.accuracy()) << '\n';
    }
    return out.str();
}

RepresentationComparison compare_representations(const std::vector<AnnotationRecord>& annotations,
                                                 const SentimentLexicon& reference) {
    // Population: keys annotated under any combo that the reference covers.
    std::set<NormalizedKey> annotated_keys;
    for (const auto& record : annotations) annotated_keys.insert(record.key);
    std::set<NormalizedKey> population;
    for (const auto& key : annotated_keys) {
        if (reference.exact(key)) population.insert(key);
    }

    RepresentationComparison result;
    result.population = static_cast<long>(population.size());
    result.population_mismatch = !annotated_keys.empty() && population.empty();

    for (const auto combo : RepresentationCombo::all()) {
        ComboComparison row;
        row.combo = combo;
        for (const auto& record : annotations) {
            if (record.combo != combo) continue;
            row.present = true;
            if (!population.contains(record.key)) continue;
            if (reference.exact(record.key) == record.label) ++row.matches;
        }
        result.rows.push_back(row);
    }
    return result;
}

std::string RepresentationComparison::to_csv() const {
    std::ostringstream out;
    out << "representation,matches,population\n";
    for (const auto& row : rows) {
        out << row.combo.name() << ',';
        if (row.present) out << row.matches;
        else out << "absent";
        out << ',' << population << '\n';
    }
    return out.str();
}

}  // namespace emosent
