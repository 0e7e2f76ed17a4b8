#pragma once

#include <condition_variable>
#include <cstddef>
#include <cstring>
#include <deque>
#include <mutex>
#include <span>
#include <type_traits>
#include <vector>

#include "hacc/errors.hpp"

namespace hacc {

using Message = std::vector<std::byte>;

// In-process message layer between logical ranks. Delivery is reliable and
// FIFO per (source, destination) pair. send() never blocks; receive() blocks
// until a message from the given source is available. Safe for concurrent
// use from multiple threads.
class Communicator {
 public:
  explicit Communicator(int n_ranks);

  Communicator(const Communicator&) = delete;
  Communicator& operator=(const Communicator&) = delete;

  [[nodiscard]] int size() const { return n_ranks_; }

  void send(int src, int dst, Message msg);
  Message receive(int dst, int src);
  [[nodiscard]] bool has_pending(int dst, int src) const;
  [[nodiscard]] std::size_t pending_total() const;

  template <class T>
  void send_values(int src, int dst, std::span<const T> values) {
    static_assert(std::is_trivially_copyable_v<T>);
    Message msg(values.size_bytes());
    if (!values.empty()) {
      std::memcpy(msg.data(), values.data(), values.size_bytes());
    }
    send(src, dst, std::move(msg));
  }

  template <class T>
  std::vector<T> receive_values(int dst, int src) {
    static_assert(std::is_trivially_copyable_v<T>);
    Message msg = receive(dst, src);
    if (msg.size() % sizeof(T) != 0) {
      throw ContractError("Communicator: message size is not a multiple of the element size");
    }
    std::vector<T> out(msg.size() / sizeof(T));
    if (!out.empty()) {
      std::memcpy(out.data(), msg.data(), msg.size());
    }
    return out;
  }

  // Traffic accounting. A phase groups the messages of one bulk exchange.
  void begin_phase();
  [[nodiscard]] std::size_t messages_total() const;
  [[nodiscard]] std::size_t messages_in_phase() const;
  // Number of distinct peers rank exchanged with (sent to or received from) in the current phase.
  [[nodiscard]] int phase_peers(int rank) const;
  [[nodiscard]] int max_phase_peers() const;

 private:
  [[nodiscard]] std::size_t slot(int src, int dst) const;
  void check_rank(int r) const;

  int n_ranks_;
  mutable std::mutex mutex_;
  std::condition_variable arrived_;
  std::vector<std::deque<Message>> queues_;
  std::vector<unsigned char> phase_links_;
  std::size_t messages_total_ = 0;
  std::size_t messages_phase_ = 0;
};

}  // namespace hacc
