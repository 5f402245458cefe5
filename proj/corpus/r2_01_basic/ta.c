char buf[256] = {};

TEE_MemMove(buf, params[1].memref.buffer, params[1].memref.size);
