#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

#include "padyn/mahler.hpp"
#include "padyn/transducer.hpp"

namespace padyn {

// Text documents, one directive per line, '#' starts a comment.
//
//   padyn-series 1              padyn-transducer 1
//   p 2                         p 2
//   n 1                         kind sync            (or async)
//   K 8                         states carry no-carry
//   a 0 0                       initial carry
//   a 1 0                       t carry 0 no-carry 1
//   a 2 1                       t carry 1 carry 0
//   ...                         ...
//
// Series coefficients are decimal integers reduced mod p^K; every index from
// 0 to the largest one listed must appear exactly once. Transducer rows are
// "t <state> <letter> <next> <output>" where output is a comma-separated
// word, or "-" for the empty word; every (state, letter) pair appears once.

inline constexpr std::string_view kSeriesTag = "padyn-series";
inline constexpr std::string_view kTransducerTag = "padyn-transducer";
inline constexpr int kFormatVersion = 1;

enum class DocumentKind { Series, Transducer, Unknown };

DocumentKind sniff_document(std::string_view text);

MahlerSeries parse_series(std::string_view text);
std::string format_series(const MahlerSeries& series);

std::shared_ptr<const TableTransducer> parse_transducer(std::string_view text);
std::string format_transducer(const TableTransducer& t);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace padyn
