char key[] = "0a1b2c3d4e5f";

TEE_MemMove(params[0].memref.buffer, key, sizeof(key));
