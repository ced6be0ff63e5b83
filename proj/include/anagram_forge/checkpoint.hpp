#pragma once

// Resumable afcn search state: one newline-delimited JSON file per grid
// width. The first line is a version header; each further line records one
// finished (c, task) outcome. Files with another header are ignored.

#include <cstddef>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <utility>

#include "anagram_forge/pathcheck.hpp"

namespace anagram_forge {

inline constexpr int kCheckpointVersion = 1;

class FileCheckpoint final : public AfcnCheckpoint {
public:
    /// Loads <directory>/afcn_grid_n<n>.ndjson if present and current.
    FileCheckpoint(std::filesystem::path directory, std::size_t n);

    std::optional<AfcnTaskOutcome> load(std::size_t c, std::size_t task) override;
    /// Rewrites the whole file through a temporary and a rename.
    void store(std::size_t c, std::size_t task, const AfcnTaskOutcome& outcome) override;

    const std::filesystem::path& path() const { return path_; }
    std::size_t entries() const;
    /// A file existed but had a different version header or was unreadable.
    bool discarded_stale() const { return discarded_stale_; }

private:
    void write_locked() const;

    std::filesystem::path path_;
    std::size_t n_;
    std::map<std::pair<std::size_t, std::size_t>, AfcnTaskOutcome> entries_;
    bool discarded_stale_ = false;
    mutable std::mutex mutex_;
};

/// `explicit_dir` if given, else $ANAGRAM_FORGE_CACHE, else nothing.
std::optional<std::filesystem::path> cache_directory(const std::optional<std::string>& explicit_dir);

}  // namespace anagram_forge
