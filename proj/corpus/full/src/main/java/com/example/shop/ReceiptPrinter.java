package com.example.shop;

public class ReceiptPrinter {
    private final PriceService prices;

    public ReceiptPrinter(PriceService prices) {
        this.prices = prices;
    }

    public String header(Customer customer) {
        return "Receipt for " + customer.getName() + " in " + prices.currency();
    }

    public String total(String sku, int quantity) {
        return (prices.priceOf(sku) * quantity) + " " + prices.currency();
    }
}
