#include "hacc/comm.hpp"

#include <algorithm>
#include <string>

namespace hacc {

Communicator::Communicator(int n_ranks)
    : n_ranks_(n_ranks),
      queues_(static_cast<std::size_t>(n_ranks > 0 ? n_ranks : 0) * static_cast<std::size_t>(n_ranks > 0 ? n_ranks : 0)),
      phase_links_(queues_.size(), 0) {
  if (n_ranks <= 0) {
    throw ConfigError("Communicator: rank count must be positive");
  }
}

std::size_t Communicator::slot(int src, int dst) const {
  return static_cast<std::size_t>(src) * static_cast<std::size_t>(n_ranks_) + static_cast<std::size_t>(dst);
}

void Communicator::check_rank(int r) const {
  if (r < 0 || r >= n_ranks_) {
    throw ContractError("Communicator: rank " + std::to_string(r) + " out of range");
  }
}

void Communicator::send(int src, int dst, Message msg) {
  check_rank(src);
  check_rank(dst);
  {
    std::lock_guard lock(mutex_);
    queues_[slot(src, dst)].push_back(std::move(msg));
    ++messages_total_;
    ++messages_phase_;
    phase_links_[slot(src, dst)] = 1;
  }
  arrived_.notify_all();
}

Message Communicator::receive(int dst, int src) {
  check_rank(src);
  check_rank(dst);
  std::unique_lock lock(mutex_);
  auto& q = queues_[slot(src, dst)];
  arrived_.wait(lock, [&q] { return !q.empty(); });
  Message msg = std::move(q.front());
  q.pop_front();
  return msg;
}

bool Communicator::has_pending(int dst, int src) const {
  std::lock_guard lock(mutex_);
  return !queues_[slot(src, dst)].empty();
}

std::size_t Communicator::pending_total() const {
  std::lock_guard lock(mutex_);
  std::size_t n = 0;
  for (const auto& q : queues_) {
    n += q.size();
  }
  return n;
}

void Communicator::begin_phase() {
  std::lock_guard lock(mutex_);
  std::fill(phase_links_.begin(), phase_links_.end(), 0);
  messages_phase_ = 0;
}

std::size_t Communicator::messages_total() const {
  std::lock_guard lock(mutex_);
  return messages_total_;
}

std::size_t Communicator::messages_in_phase() const {
  std::lock_guard lock(mutex_);
  return messages_phase_;
}

int Communicator::phase_peers(int rank) const {
  check_rank(rank);
  std::lock_guard lock(mutex_);
  int peers = 0;
  for (int other = 0; other < n_ranks_; ++other) {
    if (other == rank) {
      continue;
    }
    if (phase_links_[slot(rank, other)] != 0 || phase_links_[slot(other, rank)] != 0) {
      ++peers;
    }
  }
  return peers;
}

int Communicator::max_phase_peers() const {
  int best = 0;
  for (int r = 0; r < n_ranks_; ++r) {
    best = std::max(best, phase_peers(r));
  }
  return best;
}

}  // namespace hacc
