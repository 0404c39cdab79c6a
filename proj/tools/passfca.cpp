// passfca: mine recurring passing sequences from match-event logs.
//
//   passfca ingest   --match 2565554 --match 2565559
//   passfca scale    --half 2565554:1H
//   passfca basis    --half 2565554:1H
//   passfca search   --index 2565554:1H --target 2565554:2H --target 2565559:1H
//   passfca pipeline --index 2565554:1H --target 2565554:2H ...
//
// Exit codes: 0 success, 1 usage or config error, 2 data error, 3 I/O error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "passfca/passfca.hpp"

namespace {

namespace fs = std::filesystem;
using namespace passfca;

enum ExitCode { ok = 0, usage_error = 1, data_error = 2, io_error = 3 };

struct Flags {
    fs::path config_file;
    fs::path data_dir;
    fs::path events, matches_file, players;
    fs::path out;
    long long team_id = default_team_id;
    std::string tags;
    int bins = 10;
    double max_minutes = 50;
    std::string overflow = "clamp";
    std::size_t min_support = 1;
    int cutoff = 75;
    int limit = 10;
    bool strict = false;
    bool dedup = false;
    bool dump_config = false;
};

std::set<int> parse_tags(const std::string& text)
{
    std::set<int> tags;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        if (item.empty()) continue;
        std::size_t used = 0;
        int tag = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad tag '" + item + "'");
        tags.insert(tag);
    }
    return tags;
}

/// defaults < dataset root < config file < flags given on the command line.
PipelineConfig resolve_config(const CLI::App& app, const Flags& f)
{
    PipelineConfig cfg;
    auto root = !f.data_dir.empty() ? std::optional<fs::path>(f.data_dir) : dataset_root_from_env();
    if (root) cfg.paths = dataset_paths_under(*root);
    if (!f.config_file.empty()) {
        if (!fs::exists(f.config_file)) throw IoError("config file not found: " + f.config_file.string());
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(stages::read_text(f.config_file));
        } catch (const nlohmann::json::parse_error& e) {
            throw std::invalid_argument("config file " + f.config_file.string() + ": " + e.what());
        }
        cfg = config_from_json(j, cfg);
    }
    auto given = [&](const char* name) { return app.count(name) > 0; };
    if (given("--events")) cfg.paths.events = f.events;
    if (given("--matches-file")) cfg.paths.matches = f.matches_file;
    if (given("--players")) cfg.paths.players = f.players;
    if (given("--out")) cfg.out_dir = f.out;
    if (given("--team-id")) cfg.team_id = f.team_id;
    if (given("--tags")) cfg.tags = parse_tags(f.tags);
    if (given("--bins")) cfg.scaling.bins_per_half = f.bins;
    if (given("--max-minutes")) cfg.scaling.max_minutes = f.max_minutes;
    if (given("--overflow"))
        cfg.scaling.overflow = f.overflow == "reject" ? OverflowPolicy::reject : OverflowPolicy::clamp;
    if (given("--min-support")) cfg.min_support = f.min_support;
    if (given("--cutoff")) cfg.search.score_cutoff = f.cutoff;
    if (given("--limit")) cfg.search.limit = f.limit;
    if (given("--strict")) cfg.error_mode = ErrorMode::strict;
    if (given("--dedup-hits")) cfg.dedup_hits = true;
    cfg.validate();
    return cfg;
}

std::vector<HalfKey> parse_halves(const std::vector<std::string>& texts)
{
    std::vector<HalfKey> halves;
    for (const auto& t : texts) halves.push_back(parse_half_key(t));
    return halves;
}

void print_ingest(const stages::IngestSummary& s)
{
    for (const auto& h : s.halves)
        std::cout << "ingest " << h.half.name() << ": " << h.passes << " passes, " << h.dropped << " dropped\n";
    if (s.skipped_records > 0) std::cout << "ingest: skipped " << s.skipped_records << " malformed records\n";
    for (const auto& w : s.warnings) std::cerr << "warning: " << w << '\n';
    if (s.cached) std::cout << "ingest: up to date\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Mine recurring passing sequences with the canonical basis of implications"};
    app.require_subcommand(1);
    Flags f;

    app.add_option("--config", f.config_file, "JSON config file; flags override its values");
    app.add_option("--data-dir", f.data_dir, std::string("Dataset directory (default: $") + dataset_root_env + ")");
    app.add_option("--events", f.events, "Events JSON file");
    app.add_option("--matches-file", f.matches_file, "Matches JSON file");
    app.add_option("--players", f.players, "Players JSON file");
    app.add_option("--out", f.out, "Output directory")->capture_default_str();
    app.add_option("--team-id", f.team_id, "Team whose passes are mined")->capture_default_str();
    app.add_option("--tags", f.tags, "Comma-separated pass tags (default 1801,1802,301,302)");
    app.add_option("--bins", f.bins, "Bins per half")->capture_default_str();
    app.add_option("--max-minutes", f.max_minutes, "Minutes covered by the bins")->capture_default_str();
    app.add_option("--overflow", f.overflow, "Events past the last bin")
        ->check(CLI::IsMember({"clamp", "reject"}))
        ->capture_default_str();
    app.add_option("--min-support", f.min_support, "Minimum implication support")->capture_default_str();
    app.add_option("--cutoff", f.cutoff, "Similarity score cutoff (0-100)")->capture_default_str();
    app.add_option("--limit", f.limit, "Maximum hits per query and target")->capture_default_str();
    app.add_flag("--strict", f.strict, "Abort on malformed event records");
    app.add_flag("--dedup-hits", f.dedup, "Report each (query, target) text pair once");
    app.add_flag("--dump-config", f.dump_config, "Print the effective config as JSON");

    std::vector<long long> match_ids;
    auto* ingest = app.add_subcommand("ingest", "Extract per-half pass lists");
    ingest->add_option("--match", match_ids, "Match ids to keep (default: all)");
    ingest->fallthrough();

    std::vector<std::string> halves;
    bool csv = false;
    auto* scale = app.add_subcommand("scale", "Scale pass lists into CXT contexts");
    scale->add_option("--half", halves, "MATCH:PERIOD")->required();
    scale->add_flag("--csv", csv, "Also write the context as a CSV matrix");
    scale->fallthrough();

    auto* basis = app.add_subcommand("basis", "Compute the canonical basis of a context");
    basis->add_option("--half", halves, "MATCH:PERIOD")->required();
    basis->fallthrough();

    std::string index;
    std::vector<std::string> targets;
    auto* search = app.add_subcommand("search", "Search index conclusions in target halves");
    search->add_option("--index", index, "Index half MATCH:PERIOD")->required();
    search->add_option("--target", targets, "Target half MATCH:PERIOD")->required();
    search->fallthrough();

    auto* pipeline = app.add_subcommand("pipeline", "Run every stage");
    pipeline->add_option("--index", index, "Index half MATCH:PERIOD")->required();
    pipeline->add_option("--target", targets, "Target half MATCH:PERIOD")->required();
    pipeline->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : usage_error;
    }

    try {
        auto cfg = resolve_config(app, f);
        if (f.dump_config) std::cout << to_json(cfg).dump(2) << '\n';

        if (ingest->parsed()) {
            print_ingest(stages::cmd_ingest(cfg, {match_ids.begin(), match_ids.end()}));
        } else if (scale->parsed()) {
            for (const auto& h : parse_halves(halves)) {
                auto r = stages::cmd_scale(cfg, h, csv);
                std::cout << "scale " << h.name() << ": " << r.objects << "x" << r.attributes << " -> "
                          << r.cxt.string() << (r.cached ? " (up to date)" : "") << '\n';
                if (r.clamped_events > 0)
                    std::cerr << "warning: " << r.clamped_events << " events clamped into the last bin\n";
            }
        } else if (basis->parsed()) {
            for (const auto& h : parse_halves(halves)) {
                auto r = stages::cmd_basis(cfg, h);
                if (r.cached)
                    std::cout << "basis " << h.name() << ": " << r.retained << " retained (up to date)\n";
                else
                    std::cout << "basis " << h.name() << ": " << r.implications << " implications, " << r.retained
                              << " with support >= " << cfg.min_support << '\n';
            }
        } else {
            auto index_half = parse_half_key(index);
            auto target_halves = parse_halves(targets);
            stages::SearchResult result;
            if (pipeline->parsed()) {
                stages::validate_paths(cfg);
                auto run = stages::cmd_pipeline(cfg, index_half, target_halves);
                print_ingest(run.ingest);
                for (const auto& [h, b] : run.bases)
                    std::cout << "basis " << h.name() << ": " << b.retained << " implications with support >= "
                              << cfg.min_support << '\n';
                result = std::move(run.search);
            } else {
                result = stages::cmd_search(cfg, index_half, target_halves);
            }
            for (const auto& t : result.report.targets)
                if (t.missing) std::cerr << "warning: no data for target " << t.half.name() << '\n';
            std::size_t hits = 0;
            for (const auto& g : result.report.groups) hits += g.hits.size();
            std::cout << "search " << index_half.name() << ": " << result.report.queries << " queries, " << hits
                      << " hits -> " << result.csv.string() << '\n';
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const ParseError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return data_error;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return data_error;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return data_error;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return io_error;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return io_error;
    }
    return ok;
}
