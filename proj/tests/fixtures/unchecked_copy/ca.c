char g_AesOutpUT[] = {0x01, 0x02, 0x03, 0x04, 0x05};
// op.params[1].tmpref is an input buffer smaller than test buffer in TEE
op.params[1].tmpref.buffer = g_AesOutpUT;
op.params[1].tmpref.size = 5;
res = l_CryptoVerifyCa_SendCommand(&op, &session, CMD_AES_OPER);
