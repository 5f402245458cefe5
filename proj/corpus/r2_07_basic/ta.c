uint8_t frame[128];

TEE_MemMove(frame, template_frame, params[3].value.a);
