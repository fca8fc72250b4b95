#pragma once

#include <stdexcept>
#include <string>

namespace trendrec {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input value (bad reference id, bad datetime, bad trend name...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration (mu <= 0, n = 0 for top-N, zero sources...).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// Filesystem failure: unreadable input, failed atomic write.
class IoError : public Error {
 public:
  using Error::Error;
};

// More than half of a feed's rows failed validation.
class CorruptFeedError : public Error {
 public:
  using Error::Error;
};

// Malformed row in a structured input file; carries the line number.
class IngestError : public Error {
 public:
  IngestError(const std::string& message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Batch median volume is zero while volumes are present; the impact ratio
// would divide by zero.
class DegenerateBatchError : public Error {
 public:
  using Error::Error;
};

// A trend capture time lies after the scoring instant.
class FutureTrendError : public Error {
 public:
  using Error::Error;
};

// The sentiment provider failed while scoring a trend's texts.
class SentimentUnavailableError : public Error {
 public:
  explicit SentimentUnavailableError(const std::string& trend_name)
      : Error("sentiment unavailable for trend \"" + trend_name + "\""),
        trend_name_(trend_name) {}

  const std::string& trend_name() const { return trend_name_; }

 private:
  std::string trend_name_;
};

// Keyword extraction produced an empty profile; the item cannot participate.
class ItemSkippedError : public Error {
 public:
  explicit ItemSkippedError(const std::string& reference_id)
      : Error("item " + reference_id + " yielded no keywords"),
        reference_id_(reference_id) {}

  const std::string& reference_id() const { return reference_id_; }

 private:
  std::string reference_id_;
};

// No batch has been ingested at or before the requested scoring datetime.
class EmptyStoreError : public Error {
 public:
  using Error::Error;
};

}  // namespace trendrec
