#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <fstream>
#include <random>

#include "doctest.h"
#include "emosent/evaluate.hpp"
#include "test_paths.hpp"

using namespace emosent;

namespace {

const Segmenter& segmenter() {
    static const EmojiIndex idx = EmojiIndex::load(test::emoji_data());
    static const Segmenter seg(idx);
    return seg;
}

const SentimentLexicon& fixture_lexicon() {
    static const SentimentLexicon lex =
        SentimentLexicon::load(test::fixture_dir() / "fixture_lexicon.tsv");
    return lex;
}

std::vector<LabeledText> fixture_dataset() {
    const auto result = read_dataset(test::fixture_dir() / "multilingual_40.jsonl");
    REQUIRE(result.errors.empty());
    REQUIRE(result.rows.size() == 40);
    return result.rows;
}

LabeledText row(std::string id, std::string text, std::optional<Sentiment> truth,
                std::string country = "XX") {
    LabeledText r;
    r.id = std::move(id);
    r.text = std::move(text);
    r.language = "xx";
    r.country = std::move(country);
    r.ground_truth = truth;
    return r;
}

}  // namespace

TEST_CASE("confusion matrix basics") {
    using S = Sentiment;
    const auto m = confusion({S::Positive, S::Positive, S::Negative},
                             {S::Positive, S::Negative, S::Negative});
    CHECK(m.at(S::Positive, S::Positive) == 1);
    CHECK(m.at(S::Negative, S::Positive) == 1);
    CHECK(m.at(S::Negative, S::Negative) == 1);
    CHECK(m.total() == 3);
    CHECK(m.trace() == 2);
    CHECK(m.accuracy() == doctest::Approx(2.0 / 3.0));

    const auto f1 = f1_per_class(m);
    CHECK(f1[0] == doctest::Approx(2.0 / 3.0));  // positive
    CHECK_FALSE(f1[1].has_value());              // neutral never occurs
    CHECK(f1[2] == doctest::Approx(2.0 / 3.0));  // negative

    CHECK(m.to_csv() ==
          "truth\\pred,positive,neutral,negative\n"
          "positive,1,0,0\n"
          "neutral,0,0,0\n"
          "negative,1,0,1\n");

    CHECK_THROWS_AS(ConfusionMatrix{}.accuracy(), std::domain_error);
    CHECK_THROWS_AS(confusion({S::Positive}, {}), std::invalid_argument);
}

TEST_CASE("f1 matches a direct precision/recall computation on random data") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + rng() % 1000;
        std::vector<Sentiment> pred(n), truth(n);
        for (std::size_t i = 0; i < n; ++i) {
            pred[i] = static_cast<Sentiment>(rng() % 3);
            truth[i] = static_cast<Sentiment>(rng() % 3);
        }
        const auto m = confusion(pred, truth);
        CHECK(m.accuracy() == doctest::Approx(static_cast<double>(m.trace()) / n));
        const auto f1 = f1_per_class(m);
        for (int c = 0; c < 3; ++c) {
            const auto cls = ConfusionMatrix::class_at(c);
            long tp = 0, pred_c = 0, truth_c = 0;
            for (std::size_t i = 0; i < n; ++i) {
                tp += (pred[i] == cls && truth[i] == cls);
                pred_c += (pred[i] == cls);
                truth_c += (truth[i] == cls);
            }
            if (pred_c + truth_c == 0) {
                CHECK_FALSE(f1[c].has_value());
            } else {
                REQUIRE(f1[c].has_value());
                CHECK(*f1[c] == doctest::Approx(2.0 * tp / (pred_c + truth_c)));
            }
        }
    }
}

TEST_CASE("bucket construction and labels") {
    const auto buckets = make_buckets();
    REQUIRE(buckets.size() == 4);
    CHECK(buckets[0].label() == "1");
    CHECK(buckets[1].label() == "2-3");
    CHECK(buckets[2].label() == "4-5");
    CHECK(buckets[3].label() == "6+");
    CHECK_FALSE(buckets[3].hi.has_value());

    CHECK_THROWS_AS(make_buckets({}), std::invalid_argument);
    CHECK_THROWS_AS(make_buckets({3, 2}), std::invalid_argument);
    CHECK_THROWS_AS(make_buckets({2, 2}), std::invalid_argument);
}

TEST_CASE("evaluate_strategy on a small handmade dataset") {
    using S = Sentiment;
    const std::vector<LabeledText> dataset = {
        row("a", "great 😂👍", S::Positive),      // bsa +2 -> correct
        row("b", "bad 😭", S::Negative),          // -1 -> correct
        row("c", "meh 😐", S::Neutral),           // 0 -> correct
        row("d", "mixed 😂😭", S::Positive),      // 0 -> neutral, wrong
    };
    const auto report =
        evaluate_strategy(dataset, segmenter(), fixture_lexicon(), AggregationConfig::bsa());
    CHECK(report.evaluated == 4);
    CHECK(report.accuracy == doctest::Approx(0.75));
    CHECK(report.matrix.at(S::Positive, S::Neutral) == 1);
}

TEST_CASE("emoji counts 1, 2, 3 and 7 fill the default buckets as 1, 2, 0, 1") {
    using S = Sentiment;
    const std::vector<LabeledText> dataset = {
        row("a", "😂", S::Positive),
        row("b", "😂😂", S::Positive),
        row("c", "😂😂😂", S::Positive),
        row("d", "😂😂😂😂😂😂😂", S::Positive),
    };
    const auto report =
        evaluate_strategy(dataset, segmenter(), fixture_lexicon(), AggregationConfig::bsa());
    REQUIRE(report.buckets.size() == 4);
    CHECK(report.buckets[0].rows == 1);
    CHECK(report.buckets[1].rows == 2);
    CHECK(report.buckets[2].rows == 0);
    CHECK(report.buckets[3].rows == 1);
}

TEST_CASE("counts below the first custom bucket edge clamp into the first bucket") {
    using S = Sentiment;
    const std::vector<LabeledText> dataset = {
        row("a", "😂", S::Positive),        // 1 emoji, below first edge 2
        row("b", "😂😂😂😂", S::Positive),  // lands in 4+
    };
    EvaluateOptions options;
    options.bucket_edges = {2, 4};
    const auto report = evaluate_strategy(dataset, segmenter(), fixture_lexicon(),
                                          AggregationConfig::bsa(), options);
    REQUIRE(report.buckets.size() == 2);
    CHECK(report.buckets[0].rows == 1);
    CHECK(report.buckets[1].rows == 1);
}

TEST_CASE("unknown emojis count toward the bucket size but not the sequence") {
    using S = Sentiment;
    // 🦄 is not in the fixture lexicon: row still classifies from 😂 alone
    // but buckets under 2 emojis.
    const std::vector<LabeledText> dataset = {row("a", "😂🦄", S::Positive)};
    const auto report =
        evaluate_strategy(dataset, segmenter(), fixture_lexicon(), AggregationConfig::bsa());
    CHECK(report.evaluated == 1);
    CHECK(report.buckets[1].rows == 1);  // [2-3]
    CHECK(report.buckets[0].rows == 0);
}

TEST_CASE("frozen results for the bundled 40-row fixture") {
    using S = Sentiment;
    const auto dataset = fixture_dataset();

    SUBCASE("basic weighted strategy") {
        const auto report =
            evaluate_strategy(dataset, segmenter(), fixture_lexicon(), AggregationConfig::bsa());
        CHECK(report.evaluated == 36);
        CHECK(report.excluded_no_emoji == 3);
        CHECK(report.excluded_missing_truth == 1);
        CHECK(report.row_errors == 0);

        CHECK(report.matrix.at(S::Positive, S::Positive) == 15);
        CHECK(report.matrix.at(S::Positive, S::Neutral) == 1);
        CHECK(report.matrix.at(S::Positive, S::Negative) == 0);
        CHECK(report.matrix.at(S::Neutral, S::Positive) == 0);
        CHECK(report.matrix.at(S::Neutral, S::Neutral) == 8);
        CHECK(report.matrix.at(S::Neutral, S::Negative) == 0);
        CHECK(report.matrix.at(S::Negative, S::Positive) == 0);
        CHECK(report.matrix.at(S::Negative, S::Neutral) == 1);
        CHECK(report.matrix.at(S::Negative, S::Negative) == 11);

        CHECK(format_fraction(report.accuracy) == "0.9444");
        CHECK(format_fraction(report.macro_accuracy) == "0.9500");
        REQUIRE(report.f1[0].has_value());
        CHECK(*report.f1[0] == doctest::Approx(30.0 / 31.0));
        CHECK(*report.f1[1] == doctest::Approx(16.0 / 18.0));
        CHECK(*report.f1[2] == doctest::Approx(22.0 / 23.0));

        REQUIRE(report.buckets.size() == 4);
        CHECK(report.buckets[0].rows == 7);
        CHECK(report.buckets[0].correct == 6);
        CHECK(report.buckets[1].rows == 24);
        CHECK(report.buckets[1].correct == 23);
        CHECK(report.buckets[2].rows == 3);
        CHECK(report.buckets[2].correct == 3);
        CHECK(report.buckets[3].rows == 2);
        CHECK(report.buckets[3].correct == 2);

        REQUIRE(report.per_country.size() == 8);
        CHECK(report.per_country.at("IN").rows == 5);
        CHECK(report.per_country.at("IN").correct == 4);
        CHECK(report.per_country.at("JP").rows == 5);
        CHECK(report.per_country.at("JP").correct == 4);
        for (const auto& name : {"BR", "DE", "ES", "FR", "RU", "US"}) {
            CHECK(report.per_country.at(name).accuracy() == doctest::Approx(1.0));
        }
    }

    SUBCASE("first-emoji strategy diverges on the same data") {
        const auto report = evaluate_strategy(dataset, segmenter(), fixture_lexicon(),
                                              AggregationConfig::with_strategy(Strategy::First));
        CHECK(report.evaluated == 36);
        CHECK(format_fraction(report.accuracy) == "0.8889");
        // 0.89375 sits just below the half-way double, so %.4f rounds down.
        CHECK(format_fraction(report.macro_accuracy) == "0.8937");
        CHECK(report.matrix.at(S::Neutral, S::Negative) == 1);
        CHECK(report.matrix.at(S::Negative, S::Neutral) == 2);
        CHECK(*report.f1[1] == doctest::Approx(14.0 / 18.0));
        CHECK(*report.f1[2] == doctest::Approx(20.0 / 23.0));
        CHECK(report.buckets[1].correct == 21);
    }

    SUBCASE("exclusion accounting always balances") {
        for (Strategy s : {Strategy::Bsa, Strategy::Dpm, Strategy::Majority, Strategy::First,
                           Strategy::Consec, Strategy::Repeat, Strategy::Last, Strategy::All}) {
            const auto report = evaluate_strategy(dataset, segmenter(), fixture_lexicon(),
                                                  AggregationConfig::with_strategy(s));
            CHECK(report.evaluated + report.excluded_no_emoji + report.excluded_missing_truth +
                      report.row_errors ==
                  static_cast<long>(dataset.size()));
            long bucket_rows = 0;
            for (const auto& b : report.buckets) bucket_rows += b.rows;
            CHECK(bucket_rows == report.evaluated);
        }
    }

    SUBCASE("country-weighted accuracy average recovers the micro accuracy") {
        const auto report =
            evaluate_strategy(dataset, segmenter(), fixture_lexicon(), AggregationConfig::bsa());
        long rows = 0, correct = 0;
        double macro_sum = 0;
        for (const auto& [name, stats] : report.per_country) {
            rows += stats.rows;
            correct += stats.correct;
            macro_sum += stats.accuracy();
        }
        CHECK(rows == report.evaluated);
        CHECK(static_cast<double>(correct) / rows == doctest::Approx(report.accuracy));
        CHECK(macro_sum / report.per_country.size() == doctest::Approx(report.macro_accuracy));
    }

    SUBCASE("translated mode scores only rows carrying translations") {
        EvaluateOptions options;
        options.use_translated = true;
        const auto report = evaluate_strategy(dataset, segmenter(), fixture_lexicon(),
                                              AggregationConfig::bsa(), options);
        CHECK(report.used_translated);
        CHECK(report.evaluated == 3);  // fr-01, de-01, en-01
        CHECK(report.excluded_missing_truth == 37);
        CHECK(report.accuracy == doctest::Approx(1.0));
    }

    SUBCASE("report rendering uses four-decimal fractions") {
        const auto report =
            evaluate_strategy(dataset, segmenter(), fixture_lexicon(), AggregationConfig::bsa());
        const auto text = report.to_text();
        CHECK(text.find("accuracy (micro): 0.9444") != std::string::npos);
        CHECK(text.find("accuracy (macro over countries): 0.9500") != std::string::npos);
        CHECK(text.find("evaluated rows: 36") != std::string::npos);
        CHECK(text.find("excluded (no emoji): 3") != std::string::npos);
        const auto csv = report.groups_csv();
        CHECK(csv.find("country,IN,5,4,0.8000") != std::string::npos);
        CHECK(csv.find("language,fr,4,4,1.0000") != std::string::npos);
    }
}

TEST_CASE("dataset reader collects per-row errors without aborting") {
    const auto path = test::scratch_dir() / "mixed.jsonl";
    std::ofstream(path) << R"({"id": "ok", "text": "hi 😂", "truth": "positive"})" << "\n"
                        << "{broken json\n"
                        << R"({"id": "noid is missing"})" << "\n"
                        << R"({"id": "bad", "text": "x", "truth": "meh"})" << "\n"
                        << R"({"id": "untruthed", "text": "y"})" << "\n";
    const auto result = read_dataset(path);
    CHECK(result.rows.size() == 2);
    CHECK(result.errors.size() == 3);
    CHECK(result.errors[0].find(":2") != std::string::npos);
    CHECK_FALSE(result.rows[1].ground_truth.has_value());
}

TEST_CASE("representation comparison against a reference lexicon") {
    using S = Sentiment;
    std::map<NormalizedKey, LexiconValue> ref_entries;
    ref_entries[NormalizedKey{{0x1F602}}] = {S::Positive, "ref"};
    ref_entries[NormalizedKey{{0x1F62D}}] = {S::Negative, "ref"};
    ref_entries[NormalizedKey{{0x1F610}}] = {S::Neutral, "ref"};
    const SentimentLexicon reference{std::move(ref_entries)};

    auto record = [](char32_t cp, const char* combo, S label) {
        AnnotationRecord r;
        r.key = NormalizedKey{std::u32string{cp}};
        r.combo = RepresentationCombo::parse(combo);
        r.label = label;
        return r;
    };

    SUBCASE("perfect agreement scores the full population") {
        const std::vector<AnnotationRecord> annotations = {
            record(0x1F602, "icon", S::Positive),
            record(0x1F62D, "icon", S::Negative),
            record(0x1F610, "icon", S::Neutral),
        };
        const auto cmp = compare_representations(annotations, reference);
        CHECK(cmp.population == 3);
        CHECK_FALSE(cmp.population_mismatch);
        REQUIRE(cmp.rows.size() == 15);
        CHECK(cmp.rows[0].combo.name() == "Icon");
        CHECK(cmp.rows[0].present);
        CHECK(cmp.rows[0].matches == 3);
        CHECK_FALSE(cmp.rows[1].present);  // Title combo absent
        CHECK(cmp.rows[1].matches == 0);
    }
    SUBCASE("disagreements and off-reference keys are not matches") {
        const std::vector<AnnotationRecord> annotations = {
            record(0x1F602, "title", S::Negative),   // wrong label
            record(0x1F62D, "title", S::Negative),   // right
            record(0x1F984, "title", S::Positive),   // not in reference
        };
        const auto cmp = compare_representations(annotations, reference);
        CHECK(cmp.population == 2);
        CHECK(cmp.rows[1].matches == 1);
    }
    SUBCASE("disjoint key sets flag a population mismatch") {
        const std::vector<AnnotationRecord> annotations = {record(0x1F984, "icon", S::Positive)};
        const auto cmp = compare_representations(annotations, reference);
        CHECK(cmp.population == 0);
        CHECK(cmp.population_mismatch);
    }
    SUBCASE("record order does not change the counts") {
        std::vector<AnnotationRecord> annotations = {
            record(0x1F602, "icon", S::Positive),
            record(0x1F62D, "pixel", S::Positive),
            record(0x1F610, "icon", S::Neutral),
        };
        const auto a = compare_representations(annotations, reference);
        std::reverse(annotations.begin(), annotations.end());
        const auto b = compare_representations(annotations, reference);
        CHECK(a.population == b.population);
        for (std::size_t i = 0; i < a.rows.size(); ++i) {
            CHECK(a.rows[i].matches == b.rows[i].matches);
        }
    }
    SUBCASE("csv marks absent combos") {
        const auto cmp =
            compare_representations({record(0x1F602, "icon", S::Positive)}, reference);
        const auto csv = cmp.to_csv();
        CHECK(csv.find("Icon,1,1") != std::string::npos);
        CHECK(csv.find("Title,absent,1") != std::string::npos);
    }
}

TEST_CASE("fraction formatting") {
    CHECK(format_fraction(0.0) == "0.0000");
    CHECK(format_fraction(1.0) == "1.0000");
    CHECK(format_fraction(2.0 / 3.0) == "0.6667");
    CHECK(format_fraction(0.94444444) == "0.9444");
}
