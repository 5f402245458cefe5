snprintf(params[0].memref.buffer, params[0].memref.size, "%s:%u", name, key);
