op.paramTypes = TEEC_PARAM_TYPES(TEEC_NONE, TEEC_MEMREF_TEMP_INPUT, TEEC_NONE, TEEC_NONE);
op.params[1].tmpref.buffer = blob;
op.params[1].tmpref.size = blob_len;
res = TEEC_InvokeCommand(&sess, CMD_LOAD, &op, &err_origin);
