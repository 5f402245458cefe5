#include <string.h>
#include <tee_internal_api.h>

static uint8_t cache[128];

static void store(const void *data, uint32_t n)
{
    TEE_MemMove(cache, data, n);
}

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    (void)param_types;
    store(params[2].memref.buffer, params[2].memref.size);
    return TEE_SUCCESS;
}
