#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qheat::cli {

constexpr int kSchemaVersion = 1;

/// Decimal digits of an exact integer, printed verbatim.
struct Integer {
  std::string digits;
};

using Cell = std::variant<std::monostate, double, long long, bool, std::string, Integer>;

struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// %.{precision}g; nan/inf spelled out.
std::string format_number(double v, int precision);

/// RFC 4180: quote when the field has a comma, quote, CR or LF; double embedded quotes.
std::string csv_field(const std::string& s);

/// '#' meta line, header row, data rows; CRLF-free.
void write_csv(std::ostream& out, const Table& t, int precision);

/// {"schema_version": 1, "meta": {...}, "rows": [{column: value}, ...]}
void write_json(std::ostream& out, const Table& t, int precision);

/// Entry point; args excludes the program name. Returns 0 (all checks passed),
/// 1 (a check failed or a computation broke down) or 2 (usage / configuration error).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qheat::cli
