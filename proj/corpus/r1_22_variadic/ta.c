snprintf(params[3].memref.buffer, params[3].memref.size, "delta (decoder) refcount %u\n", delta_refcount);
