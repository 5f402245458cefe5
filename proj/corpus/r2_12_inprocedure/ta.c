#include <string.h>
#include <tee_internal_api.h>

static void load_blob(TEE_Param p[4])
{
    uint8_t blob[512];

    TEE_MemMove(blob, p[2].memref.buffer, p[2].memref.size);
}

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    (void)param_types;
    load_blob(params);
    return TEE_SUCCESS;
}
