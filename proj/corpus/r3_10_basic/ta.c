hash_update(&hash_ctx, params[3].memref.buffer, 64);
