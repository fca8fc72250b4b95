#include "trendrec/store.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "trendrec/errors.hpp"
#include "trendrec/matching.hpp"

namespace trendrec {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kCorruptFeedThreshold = 0.5;

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t") == std::string::npos;
}

// Parses a feed file row by row; on_row returns false to mark the row
// invalid. More than half invalid rows means the feed is unusable.
template <typename OnRow>
LoadStats scan_feed(const fs::path& path, OnRow on_row) {
  LoadStats stats;
  int rows = 0, invalid = 0;
  std::size_t lineno = 0;
  for (const std::string& line : read_lines(path)) {
    ++lineno;
    if (blank(line)) continue;
    ++rows;
    std::string error;
    try {
      json row = json::parse(line);
      error = on_row(row);
    } catch (const json::exception& e) {
      error = std::string("invalid JSON: ") + e.what();
    } catch (const std::exception& e) {
      error = e.what();
    }
    if (!error.empty()) {
      ++invalid;
      ++stats.skipped;
      stats.warnings.push_back("line " + std::to_string(lineno) + ": " + error);
    }
  }
  if (rows > 0 && invalid > rows * kCorruptFeedThreshold) {
    throw CorruptFeedError(path.string() + ": " + std::to_string(invalid) +
                           " of " + std::to_string(rows) +
                           " rows failed validation");
  }
  return stats;
}

std::string get_string(const json& row, const char* key) {
  if (!row.contains(key)) {
    throw ValidationError(std::string("missing field \"") + key + "\"");
  }
  if (!row.at(key).is_string()) {
    throw ValidationError(std::string("field \"") + key + "\" must be a string");
  }
  return row.at(key).get<std::string>();
}

std::string get_string_or(const json& row, const char* key,
                          const std::string& fallback) {
  if (!row.contains(key) || row.at(key).is_null()) return fallback;
  if (!row.at(key).is_string()) {
    throw ValidationError(std::string("field \"") + key + "\" must be a string");
  }
  return row.at(key).get<std::string>();
}

void atomic_write(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename into place: " + path.string());
  }
}

json match_to_json(const TrendMatch& m) {
  return json{{"reference_id", m.reference_id},
              {"keyword", m.keyword},
              {"trend_name_norm", m.trend_name_norm},
              {"source", m.source},
              {"trend_captured_at", format_rfc3339_utc(m.trend_captured_at)},
              {"impact", m.impact},
              {"sentiment", m.sentiment},
              {"match_flag", m.match_flag},
              {"user_priority", m.user_priority}};
}

TrendMatch match_from_json(const json& row) {
  TrendMatch m;
  m.reference_id = get_string(row, "reference_id");
  m.keyword = get_string(row, "keyword");
  m.trend_name_norm = get_string(row, "trend_name_norm");
  m.source = get_string(row, "source");
  m.trend_captured_at = parse_rfc3339_utc(get_string(row, "trend_captured_at"));
  m.impact = row.at("impact").get<double>();
  m.sentiment = row.at("sentiment").get<double>();
  m.match_flag = row.at("match_flag").get<int>();
  m.user_priority = row.at("user_priority").get<double>();
  return m;
}

json trend_to_json(const Trend& t) {
  json row{{"source", t.source},
           {"name", t.name_raw},
           {"captured_at", format_rfc3339_utc(t.captured_at)},
           {"location", t.location},
           {"sample_texts", t.sample_texts}};
  if (t.volume) {
    row["volume"] = *t.volume;
  } else {
    row["volume"] = nullptr;
  }
  return row;
}

Trend trend_from_json(const json& row) {
  Trend t;
  t.source = get_string(row, "source");
  if (t.source.empty()) throw ValidationError("field \"source\" is empty");
  t.name_raw = get_string(row, "name");
  t.name_norm = normalize_trend_name(t.name_raw);
  if (row.contains("volume") && !row.at("volume").is_null()) {
    if (!row.at("volume").is_number_integer() ||
        row.at("volume").get<std::int64_t>() < 0) {
      throw ValidationError("field \"volume\" must be a non-negative integer");
    }
    t.volume = row.at("volume").get<std::int64_t>();
  }
  t.captured_at = parse_rfc3339_utc(get_string(row, "captured_at"));
  t.location = get_string_or(row, "location", "");
  if (row.contains("sample_texts") && !row.at("sample_texts").is_null()) {
    if (!row.at("sample_texts").is_array()) {
      throw ValidationError("field \"sample_texts\" must be an array");
    }
    for (const auto& s : row.at("sample_texts")) {
      if (!s.is_string()) {
        throw ValidationError("sample_texts entries must be strings");
      }
      t.sample_texts.push_back(s.get<std::string>());
    }
  }
  return t;
}

std::string sanitize_for_filename(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '.' ||
              c == '_' || c == '-';
    out.push_back(ok ? c : '_');
  }
  return out;
}

}  // namespace

std::pair<std::vector<Item>, LoadStats> load_items(const fs::path& path) {
  struct Row {
    Item item;
    std::size_t order;
  };
  std::map<std::string, Row> by_ref;
  std::size_t order = 0;

  LoadStats stats = scan_feed(path, [&](const json& row) -> std::string {
    Item item;
    item.reference_id = canonical_reference_id(
        get_string(row, "contract_address"),
        row.contains("token_id") && row.at("token_id").is_number_unsigned()
            ? std::to_string(row.at("token_id").get<std::uint64_t>())
            : get_string(row, "token_id"));
    item.name = get_string_or(row, "name", "");
    item.description = get_string_or(row, "description", "");
    item.collection_name = get_string_or(row, "collection_name", "");
    item.collection_description = get_string_or(row, "collection_description", "");
    item.fetched_at = parse_rfc3339_utc(get_string(row, "fetched_at"));

    std::string ref = item.reference_id;
    auto it = by_ref.find(ref);
    if (it == by_ref.end()) {
      by_ref.emplace(std::move(ref), Row{std::move(item), order++});
    } else if (item.fetched_at >= it->second.item.fetched_at) {
      it->second.item = std::move(item);  // latest fetched_at wins
    }
    return "";
  });

  std::vector<const Row*> rows;
  rows.reserve(by_ref.size());
  for (const auto& [ref, row] : by_ref) rows.push_back(&row);
  std::sort(rows.begin(), rows.end(),
            [](const Row* a, const Row* b) { return a->order < b->order; });

  std::vector<Item> items;
  items.reserve(rows.size());
  for (const Row* row : rows) items.push_back(row->item);
  stats.loaded = static_cast<int>(items.size());
  return {std::move(items), std::move(stats)};
}

std::pair<std::vector<TrendBatch>, LoadStats> load_trend_batches(
    const fs::path& path) {
  std::map<std::pair<UtcTime, std::string>, std::vector<Trend>> grouped;

  LoadStats stats = scan_feed(path, [&](const json& row) -> std::string {
    Trend t = trend_from_json(row);
    grouped[{t.captured_at, t.source}].push_back(std::move(t));
    return "";
  });

  std::vector<TrendBatch> batches;
  batches.reserve(grouped.size());
  for (auto& [key, trends] : grouped) {
    stats.loaded += static_cast<int>(trends.size());
    batches.push_back(
        make_trend_batch(key.second, key.first, std::move(trends)));
  }
  return {std::move(batches), std::move(stats)};
}

std::pair<std::map<std::string, double>, LoadStats> load_priorities(
    const fs::path& path) {
  std::map<std::string, double> priorities;
  LoadStats stats = scan_feed(path, [&](const json& row) -> std::string {
    std::string name = get_string(row, "trend_name_norm");
    if (!row.contains("priority") || !row.at("priority").is_number()) {
      throw ValidationError("field \"priority\" must be a number");
    }
    double p = row.at("priority").get<double>();
    if (!(p > 0.0)) throw ValidationError("priority must be > 0");
    priorities[name] = p;
    return "";
  });
  stats.loaded = static_cast<int>(priorities.size());
  return {std::move(priorities), std::move(stats)};
}

Store::Store(fs::path dir) : dir_(std::move(dir)) {}

void Store::ensure_layout() const {
  std::error_code ec;
  fs::create_directories(dir_ / "batches", ec);
  if (ec) throw IoError("cannot create store at " + dir_.string());
}

fs::path Store::batch_path(const std::string& source,
                           UtcTime captured_at) const {
  return dir_ / "batches" /
         (sanitize_for_filename(source) + "-" + format_rfc3339_utc(captured_at) +
          ".jsonl");
}

void Store::put_items(const std::vector<Item>& items,
                      const std::vector<ItemProfile>& profiles) {
  ensure_layout();
  std::map<std::string, const ItemProfile*> by_ref;
  for (const ItemProfile& p : profiles) by_ref[p.reference_id] = &p;

  std::vector<const Item*> ordered;
  ordered.reserve(items.size());
  for (const Item& item : items) {
    if (by_ref.count(item.reference_id)) ordered.push_back(&item);
  }
  std::sort(ordered.begin(), ordered.end(), [](const Item* a, const Item* b) {
    return a->reference_id < b->reference_id;
  });

  std::string content;
  for (const Item* item : ordered) {
    json row{{"reference_id", item->reference_id},
             {"name", item->name},
             {"description", item->description},
             {"collection_name", item->collection_name},
             {"collection_description", item->collection_description},
             {"fetched_at", format_rfc3339_utc(item->fetched_at)},
             {"keywords", by_ref.at(item->reference_id)->keywords}};
    content += row.dump();
    content += '\n';
  }
  atomic_write(dir_ / "items.jsonl", content);
}

std::vector<Item> Store::items() const {
  fs::path path = dir_ / "items.jsonl";
  std::vector<Item> out;
  if (!fs::exists(path)) return out;
  for (const std::string& line : read_lines(path)) {
    if (blank(line)) continue;
    json row = json::parse(line);
    Item item;
    item.reference_id = get_string(row, "reference_id");
    item.name = get_string_or(row, "name", "");
    item.description = get_string_or(row, "description", "");
    item.collection_name = get_string_or(row, "collection_name", "");
    item.collection_description = get_string_or(row, "collection_description", "");
    item.fetched_at = parse_rfc3339_utc(get_string(row, "fetched_at"));
    out.push_back(std::move(item));
  }
  return out;
}

std::vector<ItemProfile> Store::profiles() const {
  fs::path path = dir_ / "items.jsonl";
  std::vector<ItemProfile> out;
  if (!fs::exists(path)) return out;
  for (const std::string& line : read_lines(path)) {
    if (blank(line)) continue;
    json row = json::parse(line);
    ItemProfile profile;
    profile.reference_id = get_string(row, "reference_id");
    for (const auto& kw : row.at("keywords")) {
      profile.keywords.push_back(kw.get<std::string>());
    }
    out.push_back(std::move(profile));
  }
  return out;
}

bool Store::has_batch(const std::string& source, UtcTime captured_at) const {
  return fs::exists(batch_path(source, captured_at));
}

Store::IngestSummary Store::ingest_batch(
    const TrendBatch& batch, const std::vector<ItemProfile>& profiles,
    const std::map<std::string, TrendSentiment>& sentiments,
    const std::map<std::string, double>& priorities,
    const ScoringConfig& config) {
  ensure_layout();
  IngestSummary summary;
  if (has_batch(batch.source, batch.captured_at)) {
    summary.duplicate = true;
    return summary;
  }

  if (!batch.trends.empty() && !batch.median_volume) {
    summary.warnings.push_back("batch " + batch.source + "@" +
                               format_rfc3339_utc(batch.captured_at) +
                               " carries no volumes; impacts default to 1");
  }

  std::vector<TrendMatch> fresh =
      enumerate_matches(profiles, batch, sentiments, priorities, config);

  // existing matches, minus leftovers of a previously interrupted ingest of
  // this same batch key
  std::vector<TrendMatch> existing;
  fs::path matches_path = dir_ / "matches.jsonl";
  if (fs::exists(matches_path)) {
    for (const std::string& line : read_lines(matches_path)) {
      if (blank(line)) continue;
      TrendMatch m = match_from_json(json::parse(line));
      if (m.source == batch.source && m.trend_captured_at == batch.captured_at) {
        continue;
      }
      existing.push_back(std::move(m));
    }
  }

  std::set<std::string> matched_before;
  for (const TrendMatch& m : existing) matched_before.insert(m.reference_id);
  std::set<std::string> fresh_items;
  for (const TrendMatch& m : fresh) {
    if (!matched_before.count(m.reference_id)) fresh_items.insert(m.reference_id);
  }

  std::string match_content;
  for (const TrendMatch& m : existing) {
    match_content += match_to_json(m).dump();
    match_content += '\n';
  }
  for (const TrendMatch& m : fresh) {
    match_content += match_to_json(m).dump();
    match_content += '\n';
  }

  std::string batch_content;
  for (const Trend& t : batch.trends) {
    batch_content += trend_to_json(t).dump();
    batch_content += '\n';
  }

  atomic_write(matches_path, match_content);
  // the batch file is the commit marker; written last
  atomic_write(batch_path(batch.source, batch.captured_at), batch_content);

  summary.matches_added = static_cast<int>(fresh.size());
  summary.items_newly_matched = static_cast<int>(fresh_items.size());
  return summary;
}

std::vector<TrendBatch> Store::batches() const {
  std::vector<TrendBatch> out;
  fs::path batches_dir = dir_ / "batches";
  if (!fs::exists(batches_dir)) return out;

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(batches_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  for (const fs::path& file : files) {
    std::vector<Trend> trends;
    for (const std::string& line : read_lines(file)) {
      if (blank(line)) continue;
      trends.push_back(trend_from_json(json::parse(line)));
    }
    if (trends.empty()) continue;
    std::string source = trends.front().source;
    UtcTime captured_at = trends.front().captured_at;
    out.push_back(make_trend_batch(std::move(source), captured_at,
                                   std::move(trends)));
  }
  std::sort(out.begin(), out.end(), [](const TrendBatch& a, const TrendBatch& b) {
    if (a.captured_at != b.captured_at) return a.captured_at < b.captured_at;
    return a.source < b.source;
  });
  return out;
}

std::vector<UtcTime> Store::batch_datetimes() const {
  std::set<UtcTime> seen;
  for (const TrendBatch& b : batches()) seen.insert(b.captured_at);
  return {seen.begin(), seen.end()};
}

MatchStore Store::matches() const {
  MatchStore store;
  fs::path matches_path = dir_ / "matches.jsonl";
  if (fs::exists(matches_path)) {
    for (const std::string& line : read_lines(matches_path)) {
      if (blank(line)) continue;
      store.matches.push_back(match_from_json(json::parse(line)));
    }
  }
  for (const TrendBatch& b : batches()) {
    store.batches.push_back({b.source, b.captured_at});
  }
  return store;
}

ScoringConfig Store::config() const {
  fs::path path = dir_ / "config.json";
  ScoringConfig config;
  if (!fs::exists(path)) return config;

  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json row = json::parse(in);

  config.mu = row.value("mu", config.mu);
  config.positive_multiplier =
      row.value("positive_multiplier", config.positive_multiplier);
  config.include_negative_in_topn =
      row.value("include_negative_in_topn", config.include_negative_in_topn);
  if (row.contains("novolume_policy")) {
    config.novolume_policy = row.at("novolume_policy") == "omit"
                                 ? NoVolumePolicy::MedianOmit
                                 : NoVolumePolicy::MinMinusOne;
  }
  if (row.contains("match_mode")) {
    config.match_mode = row.at("match_mode") == "contain"
                            ? MatchMode::TokenContainment
                            : MatchMode::ExactPhrase;
  }
  if (row.contains("lookback_days") && !row.at("lookback_days").is_null()) {
    config.lookback_days = row.at("lookback_days").get<int>();
  }
  config.validate();
  return config;
}

void Store::save_config(const ScoringConfig& config) {
  ensure_layout();
  config.validate();
  json row{{"mu", config.mu},
           {"positive_multiplier", config.positive_multiplier},
           {"include_negative_in_topn", config.include_negative_in_topn},
           {"novolume_policy",
            config.novolume_policy == NoVolumePolicy::MedianOmit ? "omit"
                                                                 : "min"},
           {"match_mode",
            config.match_mode == MatchMode::TokenContainment ? "contain"
                                                             : "exact"}};
  row["lookback_days"] =
      config.lookback_days ? json(*config.lookback_days) : json(nullptr);
  atomic_write(dir_ / "config.json", row.dump(2) + "\n");
}

}  // namespace trendrec
