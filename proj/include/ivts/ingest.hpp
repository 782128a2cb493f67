#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "ivts/dgp.hpp"

namespace ivts {

struct IngestConfig {
    std::size_t window = 30; ///< days per interval series
    std::size_t stride = 0;  ///< days between window starts; 0 means window

    void validate() const;
};

struct IngestResult {
    LabeledDataset dataset;
    std::vector<std::string> dim_names;   ///< dataset dim j <- dim_names[j]
    std::vector<std::string> label_names; ///< dataset label y <- label_names[y - 1]
    std::vector<std::string> warnings;
};

/// Aggregates raw `series_id,dim,timestamp,value,label` readings into daily
/// [min, max] intervals and cuts each series into length-`window` windows.
///
/// Timestamps start with an ISO date (YYYY-MM-DD); anything after it is
/// ignored for grouping. Days missing any dimension are dropped with a
/// warning; trailing days that do not fill a window are dropped. Labels that
/// are all positive integers are kept as-is, otherwise distinct labels are
/// numbered 1..C in sorted order.
IngestResult ingest_raw_csv(const std::filesystem::path& path, const IngestConfig& cfg);

} // namespace ivts
