"""Static figures of sampled surfaces."""
