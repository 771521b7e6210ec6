#ifndef ADACYCLE_TRACE_IO_HPP_
#define ADACYCLE_TRACE_IO_HPP_

#include <memory>
#include <string>
#include <string_view>

#include "adacycle/boost.hpp"
#include "adacycle/simplex.hpp"

namespace adacycle {

inline constexpr const char* kTraceSchema = "adacycle-trace";
inline constexpr int kTraceVersion = 1;

// JSON document. Exact traces store weights and edges as "p/q" strings;
// float traces store shortest round-trip decimals. Either way
// serialize(parse(serialize(t))) == serialize(t) byte for byte.
std::string serialize_trace(const AnyTrace& trace);
AnyTrace parse_trace(std::string_view text);

void save_trace(const AnyTrace& trace, const std::string& path);
AnyTrace load_trace(const std::string& path);

// One dichotomy per line over {+, -}; '#' starts a comment; blank lines skip.
std::shared_ptr<const HypothesisPool> parse_pool(std::string_view text,
                                                 PoolOrigin origin = PoolOrigin::synthetic);
std::shared_ptr<const HypothesisPool> load_pool(const std::string& path);
std::string format_pool(const HypothesisPool& pool);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace adacycle

#endif  // ADACYCLE_TRACE_IO_HPP_
