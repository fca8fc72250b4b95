#include "trendrec/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "trendrec/errors.hpp"
#include "trendrec/text.hpp"

namespace trendrec {

bool SentimentTriple::valid(double tolerance) const {
  if (neg < 0.0 || neg > 1.0 || neu < 0.0 || neu > 1.0 || pos < 0.0 ||
      pos > 1.0) {
    return false;
  }
  return std::fabs(neg + neu + pos - 1.0) <= tolerance;
}

void ScoringConfig::validate() const {
  if (!(mu > 0.0)) throw ConfigurationError("mu must be > 0");
  if (!(positive_multiplier > 0.0)) {
    throw ConfigurationError("positive_multiplier must be > 0");
  }
  if (lookback_days && *lookback_days < 0) {
    throw ConfigurationError("lookback_days must be >= 0");
  }
}

std::string canonical_reference_id(std::string_view contract_address,
                                   std::string_view token_id) {
  bool address_ok = contract_address.size() == 42 &&
                    contract_address[0] == '0' &&
                    (contract_address[1] == 'x' || contract_address[1] == 'X');
  if (address_ok) {
    for (char c : contract_address.substr(2)) {
      if (!std::isxdigit(static_cast<unsigned char>(c))) {
        address_ok = false;
        break;
      }
    }
  }
  if (!address_ok) {
    throw ValidationError("contract_address must be 0x followed by 40 hex "
                          "characters, got \"" +
                          std::string(contract_address) + "\"");
  }

  bool token_ok = !token_id.empty() &&
                  std::all_of(token_id.begin(), token_id.end(), [](char c) {
                    return std::isdigit(static_cast<unsigned char>(c));
                  });
  if (!token_ok) {
    throw ValidationError("token_id must be a non-empty decimal string, got \"" +
                          std::string(token_id) + "\"");
  }

  std::string out = text::to_lower(contract_address);
  out.push_back(':');
  out.append(token_id);
  return out;
}

std::string normalize_trend_name(std::string_view name_raw) {
  std::string lowered = text::to_lower(name_raw);
  std::string_view v{lowered};
  // the leading run of hashtag markers may be interleaved with whitespace
  while (!v.empty() &&
         (v.front() == '#' ||
          text::is_space(static_cast<unsigned char>(v.front())))) {
    v.remove_prefix(1);
  }
  std::string out = text::normalize_phrase(v);
  if (out.empty()) {
    throw ValidationError("trend name \"" + std::string(name_raw) +
                          "\" is empty after normalization");
  }
  return out;
}

TrendBatch make_trend_batch(std::string source, UtcTime captured_at,
                            std::vector<Trend> trends) {
  for (const Trend& t : trends) {
    if (t.source != source || t.captured_at != captured_at) {
      throw ValidationError("trend \"" + t.name_norm +
                            "\" does not belong to batch " + source + "@" +
                            format_rfc3339_utc(captured_at));
    }
    if (t.volume && *t.volume < 0) {
      throw ValidationError("trend \"" + t.name_norm +
                            "\" has a negative volume");
    }
  }

  std::vector<std::int64_t> volumes;
  for (const Trend& t : trends) {
    if (t.volume) volumes.push_back(*t.volume);
  }

  TrendBatch batch{std::move(source), captured_at, std::move(trends),
                   std::nullopt, std::nullopt};
  if (!volumes.empty()) {
    std::sort(volumes.begin(), volumes.end());
    std::size_t n = volumes.size();
    batch.median_volume =
        n % 2 == 1 ? static_cast<double>(volumes[n / 2])
                   : (static_cast<double>(volumes[n / 2 - 1]) +
                      static_cast<double>(volumes[n / 2])) /
                         2.0;
    batch.min_volume = volumes.front();
  }
  return batch;
}

}  // namespace trendrec
