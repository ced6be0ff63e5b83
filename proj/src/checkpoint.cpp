#include "anagram_forge/checkpoint.hpp"

#include <cstdlib>
#include <fstream>
#include <string>

#include "anagram_forge/serialize.hpp"

namespace anagram_forge {

namespace {

Json header(std::size_t n) {
    return Json{{"format", "anagram-forge/afcn-grid-checkpoint"}, {"version", kCheckpointVersion}, {"n", n}};
}

}  // namespace

FileCheckpoint::FileCheckpoint(std::filesystem::path directory, std::size_t n)
    : path_(std::move(directory) / ("afcn_grid_n" + std::to_string(n) + ".ndjson")), n_(n) {
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    if (!std::getline(in, line)) return;
    try {
        if (Json::parse(line) != header(n)) {
            discarded_stale_ = true;
            return;
        }
        std::map<std::pair<std::size_t, std::size_t>, AfcnTaskOutcome> loaded;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const Json j = Json::parse(line);
            AfcnTaskOutcome outcome;
            outcome.found = j.at("found").get<bool>();
            outcome.nodes = j.at("nodes").get<std::uint64_t>();
            if (!j.at("colouring").is_null()) outcome.colouring = grid_colouring_from_json(j.at("colouring"));
            loaded[{j.at("c").get<std::size_t>(), j.at("task").get<std::size_t>()}] = std::move(outcome);
        }
        entries_ = std::move(loaded);
    } catch (const std::exception&) {
        discarded_stale_ = true;
        entries_.clear();
    }
}

std::optional<AfcnTaskOutcome> FileCheckpoint::load(std::size_t c, std::size_t task) {
    std::lock_guard lock(mutex_);
    const auto it = entries_.find({c, task});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void FileCheckpoint::store(std::size_t c, std::size_t task, const AfcnTaskOutcome& outcome) {
    std::lock_guard lock(mutex_);
    entries_[{c, task}] = outcome;
    write_locked();
}

std::size_t FileCheckpoint::entries() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

void FileCheckpoint::write_locked() const {
    std::filesystem::create_directories(path_.parent_path());
    const std::filesystem::path temp = path_.string() + ".tmp";
    {
        std::ofstream out(temp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write checkpoint " + temp.string());
        out << header(n_).dump() << '\n';
        for (const auto& [key, outcome] : entries_) {
            const Json line{{"c", key.first},
                            {"task", key.second},
                            {"found", outcome.found},
                            {"nodes", outcome.nodes},
                            {"colouring", outcome.colouring ? to_json(*outcome.colouring) : Json(nullptr)}};
            out << line.dump() << '\n';
        }
        out.flush();
        if (!out) throw std::runtime_error("cannot write checkpoint " + temp.string());
    }
    std::filesystem::rename(temp, path_);
}

std::optional<std::filesystem::path> cache_directory(const std::optional<std::string>& explicit_dir) {
    if (explicit_dir && !explicit_dir->empty()) return std::filesystem::path(*explicit_dir);
    if (const char* env = std::getenv("ANAGRAM_FORGE_CACHE"); env && *env) return std::filesystem::path(env);
    return std::nullopt;
}

}  // namespace anagram_forge
