#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace burdenlab {

/// Root of every error thrown by the library. `kind()` is a stable,
/// machine-readable tag used by the battery's skip records.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column = 0)
      : Error("parse_error", format(what, line, column)), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    std::string s = "line " + std::to_string(line);
    if (column > 0) s += ", column " + std::to_string(column);
    return s + ": " + what;
  }
  std::size_t line_;
  std::size_t column_;
};

class DuplicateKeyError : public Error {
 public:
  explicit DuplicateKeyError(const std::string& what) : Error("duplicate_key", what) {}
};

class MappingError : public Error {
 public:
  explicit MappingError(const std::string& what) : Error("mapping_error", what) {}
};

class NotFoundError : public Error {
 public:
  NotFoundError(const std::string& key, std::vector<std::string> suggestions)
      : Error("not_found", format(key, suggestions)), suggestions_(std::move(suggestions)) {}
  const std::vector<std::string>& suggestions() const noexcept { return suggestions_; }

 private:
  static std::string format(const std::string& key, const std::vector<std::string>& near) {
    std::string s = "unknown indicator '" + key + "'";
    for (std::size_t i = 0; i < near.size(); ++i) s += (i == 0 ? "; nearest: " : ", ") + near[i];
    return s;
  }
  std::vector<std::string> suggestions_;
};

class InsufficientOverlapError : public Error {
 public:
  InsufficientOverlapError(std::size_t overlap, std::size_t required)
      : Error("insufficient_overlap", "overlap of " + std::to_string(overlap) +
                                          " years is below the required " +
                                          std::to_string(required)),
        overlap_(overlap) {}
  std::size_t overlap() const noexcept { return overlap_; }

 private:
  std::size_t overlap_;
};

class InsufficientDataError : public Error {
 public:
  explicit InsufficientDataError(const std::string& what)
      : Error("insufficient_data", what) {}
};

class DegenerateInputError : public Error {
 public:
  explicit DegenerateInputError(const std::string& what)
      : Error("degenerate_input", what) {}
};

class NonContiguousError : public Error {
 public:
  explicit NonContiguousError(const std::string& what)
      : Error("non_contiguous_years", what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain_error", what) {}
};

class SingularDesignError : public Error {
 public:
  SingularDesignError(std::size_t rank, std::size_t columns)
      : Error("singular_design", "design matrix has rank " + std::to_string(rank) +
                                     " < " + std::to_string(columns) + " columns"),
        rank_(rank) {}
  std::size_t rank() const noexcept { return rank_; }

 private:
  std::size_t rank_;
};

class MissingBandError : public Error {
 public:
  explicit MissingBandError(const std::string& band)
      : Error("missing_band", "age band '" + band + "' has no matching entry"), band_(band) {}
  const std::string& band() const noexcept { return band_; }

 private:
  std::string band_;
};

class MissingWeightError : public Error {
 public:
  MissingWeightError(const std::string& condition, const std::string& band)
      : Error("missing_weight",
              "no disability weight for condition '" + condition + "', band '" + band + "'") {}
};

class NormalizationError : public Error {
 public:
  explicit NormalizationError(double sum)
      : Error("normalization_error",
              "standard-population weights sum to " + std::to_string(sum) + ", expected 1") {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error("config_error", what) {}
};

class TypeError : public Error {
 public:
  explicit TypeError(const std::string& what) : Error("type_error", what) {}
};

}  // namespace burdenlab
